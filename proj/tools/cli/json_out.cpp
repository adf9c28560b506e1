#include "cli/json_out.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace entrogeo::cli {
namespace {

std::string real(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ',';
        first = false;
        out += Json(k).dump();
        out += ':';
        write(v, out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        write(j[i], out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float:
      out += real(j.get<double>());
      break;
    default:
      out += j.dump();
  }
}

std::string leaf(const Json& j) {
  if (j.is_number_float()) return real(j.get<double>());
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

void flatten(const Json& j, const std::string& path, std::string& out) {
  const bool flat_array = j.is_array() &&
                          std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
  if (j.is_object() && !j.empty()) {
    for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, out);
  } else if (j.is_array() && !j.empty() && !flat_array) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
  } else if (flat_array) {
    std::string row;
    for (std::size_t i = 0; i < j.size(); ++i) row += (i ? " " : "") + leaf(j[i]);
    out += path + "  " + row + "\n";
  } else {
    out += path + "  " + leaf(j) + "\n";
  }
}

}  // namespace

std::string to_json(const Json& doc) {
  std::string out;
  write(doc, out);
  out += '\n';
  return out;
}

std::string to_table(const Json& doc) {
  std::string out;
  flatten(doc, "", out);
  return out;
}

}  // namespace entrogeo::cli
