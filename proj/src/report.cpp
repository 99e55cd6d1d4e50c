#include "krein/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "krein/errors.hpp"

namespace krein {

namespace {

void emit(std::ostringstream& os, const nlohmann::ordered_json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(2 * depth), ' ');
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) os << ",\n";
        first = false;
        os << pad << nlohmann::ordered_json(key).dump() << ": ";
        emit(os, value, depth + 1);
      }
      os << "\n" << close << "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      // arrays of scalars stay on one line
      const bool flat = std::all_of(j.begin(), j.end(), [](const auto& v) { return v.is_primitive(); });
      if (flat) {
        os << "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) os << ", ";
          emit(os, j[i], depth + 1);
        }
        os << "]";
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << pad;
        emit(os, j[i], depth + 1);
      }
      os << "\n" << close << "]";
      return;
    }
    case nlohmann::json::value_t::number_float: {
      const double x = j.get<double>();
      os << (std::isfinite(x) ? format_double(x) : "null");
      return;
    }
    default:
      os << j.dump();
  }
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s(buf);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

std::string to_deterministic_json(const nlohmann::ordered_json& j) {
  std::ostringstream os;
  emit(os, j, 0);
  os << "\n";
  return os.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_csv_tables(const std::string& prefix, const std::vector<CsvTable>& tables) {
  for (const auto& t : tables) {
    std::ostringstream os;
    for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
    os << "\n";
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
      os << "\n";
    }
    write_text(prefix + t.suffix, os.str());
  }
}

}  // namespace krein
