#include "dsvs/time_function.hpp"

#include <charconv>
#include <cstdio>
#include <string_view>
#include <vector>

#include "dsvs/errors.hpp"

namespace dsvs {

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(std::string_view s, const std::string& context) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw UsageError("cannot parse number '" + std::string(s) + "' in " + context);
  return v;
}

std::vector<double> parse_args(std::string_view s, const std::string& context) {
  std::vector<double> out;
  while (true) {
    const auto comma = s.find(',');
    out.push_back(parse_double(s.substr(0, comma), context));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace

std::string TimeFunction::to_string() const {
  switch (kind_) {
    case Kind::constant: return format_double(a_);
    case Kind::linear: return "linear:" + format_double(a_) + "," + format_double(b_);
    case Kind::cosine:
      return "cos:" + format_double(a_) + "," + format_double(b_) + "," + format_double(w_);
    case Kind::exponential: return "exp:" + format_double(a_) + "," + format_double(b_);
  }
  return {};
}

TimeFunction TimeFunction::parse(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) return constant(parse_double(text, "time function"));
  const std::string name = text.substr(0, colon);
  const auto args = parse_args(std::string_view(text).substr(colon + 1), "time function " + name);
  auto need = [&](std::size_t n) {
    if (args.size() != n)
      throw UsageError("time function '" + name + "' takes " + std::to_string(n) + " arguments");
  };
  if (name == "const") {
    need(1);
    return constant(args[0]);
  }
  if (name == "linear") {
    need(2);
    return linear(args[0], args[1]);
  }
  if (name == "cos") {
    need(3);
    return cosine(args[0], args[1], args[2]);
  }
  if (name == "exp") {
    need(2);
    return exponential(args[0], args[1]);
  }
  throw UsageError("unknown time function '" + name + "' (valid: const, linear, cos, exp)");
}

}  // namespace dsvs
