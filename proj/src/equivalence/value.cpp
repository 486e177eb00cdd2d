#include "refdecomp/equivalence.hpp"
#include "refdecomp/syntax.hpp"

#include <charconv>
#include <cmath>
#include <cstring>

namespace refdecomp {

const char *to_string(RuntimeErrorKind k) {
  switch (k) {
  case RuntimeErrorKind::DivByZero: return "div_by_zero";
  case RuntimeErrorKind::IndexOutOfBounds: return "index_out_of_bounds";
  case RuntimeErrorKind::NegativeArraySize: return "negative_array_size";
  case RuntimeErrorKind::SwitchFallthroughViolation:
    return "switch_fallthrough_violation";
  }
  return "?";
}

std::string java_double_string(double d) {
  if (std::isnan(d))
    return "NaN";
  if (std::isinf(d))
    return d > 0 ? "Infinity" : "-Infinity";
  if (d == 0)
    return std::signbit(d) ? "-0.0" : "0.0";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, d, std::chars_format::scientific);
  std::string sci(buf, res.ptr);
  std::string sign;
  if (sci[0] == '-') {
    sign = "-";
    sci.erase(0, 1);
  }
  auto e = sci.find('e');
  int exp = std::stoi(sci.substr(e + 1));
  std::string digits;
  for (char c : sci.substr(0, e))
    if (c != '.')
      digits.push_back(c);
  while (digits.size() > 1 && digits.back() == '0')
    digits.pop_back();
  double mag = std::fabs(d);
  if (mag >= 1e-3 && mag < 1e7) {
    std::string out;
    if (exp >= 0) {
      std::size_t int_len = static_cast<std::size_t>(exp) + 1;
      while (digits.size() < int_len)
        digits.push_back('0');
      std::string frac = digits.substr(int_len);
      out = digits.substr(0, int_len) + "." + (frac.empty() ? "0" : frac);
    } else {
      out = "0." + std::string(static_cast<std::size_t>(-exp - 1), '0') + digits;
    }
    return sign + out;
  }
  std::string frac = digits.substr(1);
  return sign + digits.substr(0, 1) + "." + (frac.empty() ? "0" : frac) + "E" +
         std::to_string(exp);
}

std::string display(const Value &v) {
  struct Visitor {
    std::string operator()(std::int32_t x) const { return std::to_string(x); }
    std::string operator()(std::int64_t x) const { return std::to_string(x) + "L"; }
    std::string operator()(double x) const { return java_double_string(x); }
    std::string operator()(bool x) const { return x ? "true" : "false"; }
    std::string operator()(const std::string &s) const { return quote_string(s); }
    std::string operator()(const ArrayRef &a) const {
      if (!a)
        return "null";
      std::string out = "{";
      for (std::size_t i = 0; i < a->items.size(); ++i) {
        if (i)
          out += ", ";
        out += display(a->items[i]);
      }
      return out + "}";
    }
  };
  return std::visit(Visitor{}, v);
}

Value deep_copy(const Value &v) {
  if (const auto *a = std::get_if<ArrayRef>(&v)) {
    if (!*a)
      return *a;
    auto copy = std::make_shared<ArrayValue>();
    copy->element = (*a)->element;
    copy->items.reserve((*a)->items.size());
    for (const auto &item : (*a)->items)
      copy->items.push_back(deep_copy(item));
    return copy;
  }
  return v;
}

bool same_value(const Value &a, const Value &b) {
  if (a.index() != b.index())
    return false;
  if (const auto *x = std::get_if<double>(&a)) {
    double y = std::get<double>(b);
    if (std::isnan(*x) || std::isnan(y))
      return std::isnan(*x) && std::isnan(y);
    std::uint64_t bx, by;
    std::memcpy(&bx, x, sizeof bx);
    std::memcpy(&by, &y, sizeof by);
    return bx == by;
  }
  if (const auto *x = std::get_if<ArrayRef>(&a)) {
    const auto &y = std::get<ArrayRef>(b);
    if (!*x || !y)
      return !*x && !y;
    if ((*x)->items.size() != y->items.size())
      return false;
    for (std::size_t i = 0; i < y->items.size(); ++i)
      if (!same_value((*x)->items[i], y->items[i]))
        return false;
    return true;
  }
  return a == b;
}

std::string Outcome::str() const {
  switch (kind) {
  case Kind::Value: return "value(" + display(value) + ")";
  case Kind::RuntimeError: return std::string("runtime_error(") + to_string(error) + ")";
  case Kind::BudgetExhausted: return "budget_exhausted";
  }
  return "?";
}

bool same_outcome(const Outcome &a, const Outcome &b) {
  if (a.kind != b.kind)
    return false;
  switch (a.kind) {
  case Outcome::Kind::Value: return same_value(a.value, b.value);
  case Outcome::Kind::RuntimeError: return a.error == b.error;
  case Outcome::Kind::BudgetExhausted: return true;
  }
  return false;
}

} // namespace refdecomp
