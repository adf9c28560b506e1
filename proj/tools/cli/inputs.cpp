#include "cli/inputs.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace entrogeo::cli {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

bool try_real(std::string_view text, double& out) {
  text = trim(text);
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

double parse_real(std::string_view text, std::string_view what) {
  double v = 0.0;
  if (!try_real(text, v) || !std::isfinite(v)) {
    throw UsageError("invalid number for " + std::string(what) + ": '" + std::string(text) + "'");
  }
  return v;
}

std::uint64_t parse_seed(std::string_view text) {
  text = trim(text);
  std::uint64_t v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw UsageError("invalid seed: '" + std::string(text) + "'");
  }
  return v;
}

std::vector<double> parse_reals(std::string_view text, std::string_view what) {
  std::vector<double> out;
  for (auto part : split(text, ',')) out.push_back(parse_real(part, what));
  return out;
}

ParamMap parse_params(const std::vector<std::string>& items, ParamMap into) {
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw UsageError("parameter must be k=v: '" + item + "'");
    }
    std::string key(trim(std::string_view(item).substr(0, eq)));
    const double v = parse_real(std::string_view(item).substr(eq + 1), key);
    if (!into.emplace(key, v).second) throw UsageError("parameter given twice: " + key);
  }
  return into;
}

FamilySpec parse_family(std::string_view text) {
  text = trim(text);
  const auto colon = text.find(':');
  FamilySpec spec{std::string(text.substr(0, colon)), {}};
  if (spec.name.empty()) throw UsageError("empty family name");
  if (colon != std::string_view::npos) {
    std::vector<std::string> items;
    for (auto part : split(text.substr(colon + 1), ',')) items.emplace_back(trim(part));
    spec.params = parse_params(items);
  }
  return spec;
}

ProbDist read_distribution(const std::string& path, double tol) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open distribution file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto body = trim(text);

  std::vector<double> weights;
  if (!body.empty() && (body.front() == '{' || body.front() == '[')) {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(path + ": " + e.what());
    }
    const auto& arr = doc.is_object() ? doc.value("weights", nlohmann::json()) : doc;
    if (!arr.is_array()) throw UsageError(path + ": expected a \"weights\" array");
    for (const auto& v : arr) {
      if (!v.is_number()) throw UsageError(path + ": weights must be numbers");
      weights.push_back(v.get<double>());
    }
  } else {
    std::size_t line_no = 0;
    for (auto line : split(body, '\n')) {
      ++line_no;
      line = trim(line);
      if (line.empty() || line.front() == '#') continue;
      double v = 0.0;
      if (!try_real(line, v)) {
        // A non-numeric first row is a header.
        if (line_no == 1) continue;
        throw UsageError(path + ":" + std::to_string(line_no) + ": not a number");
      }
      weights.push_back(v);
    }
  }
  return ProbDist::validate(std::move(weights), tol);
}

Conjugator parse_conjugator(std::string_view text) {
  text = trim(text);
  if (text == "id") return identity_conjugator();
  if (text == "expm1") return expm1_conjugator();
  if (text.starts_with("scale:")) return scale_conjugator(parse_real(text.substr(6), "scale"));
  throw UsageError("unknown xi: '" + std::string(text) + "' (id, scale:c, expm1)");
}

Composer parse_composer(std::string_view text) {
  text = trim(text);
  if (text.starts_with("linear:")) return linear_composer(parse_reals(text.substr(7), "zeta"));
  if (text.starts_with("quadratic:")) {
    const auto parts = split(text.substr(10), ':');
    if (parts.size() != 2) throw UsageError("quadratic zeta needs a1,...,am:b1,...,bm");
    const auto a = parse_reals(parts[0], "zeta");
    const auto b = parse_reals(parts[1], "zeta");
    if (a.size() != b.size()) throw UsageError("quadratic zeta: coefficient lists differ in length");
    std::vector<Monomial> terms;
    for (std::size_t k = 0; k < a.size(); ++k) {
      std::vector<unsigned> e(a.size(), 0);
      e[k] = 1;
      terms.push_back({a[k], e});
      e[k] = 2;
      terms.push_back({b[k], e});
    }
    return polynomial_composer(a.size(), std::move(terms));
  }
  throw UsageError("unknown zeta: '" + std::string(text) + "' (linear:..., quadratic:...)");
}

LinearConstraint parse_constraint(std::string_view text) {
  const auto colon = text.rfind(':');
  if (colon == std::string_view::npos) throw UsageError("constraint must be a1,...,aW:target");
  return {parse_reals(text.substr(0, colon), "constraint"),
          parse_real(text.substr(colon + 1), "constraint target")};
}

std::size_t parse_simplex_model(std::string_view text) {
  text = trim(text);
  if (!text.starts_with("simplex:")) throw UsageError("unknown model: '" + std::string(text) + "'");
  const double w = parse_real(text.substr(8), "model dimension");
  if (w < 1 || w != std::floor(w)) throw UsageError("simplex dimension must be a positive integer");
  return static_cast<std::size_t>(w);
}

}  // namespace entrogeo::cli
