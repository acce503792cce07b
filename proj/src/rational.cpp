#include "pgs/rational.hpp"

#include <cctype>

namespace pgs {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

std::optional<Rat> rat_parse(const std::string& text) {
  std::string s = text;
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s = s.substr(1);
  }
  if (s.empty()) return std::nullopt;

  Rat q;
  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return std::nullopt;
    mpz_class d(den);
    if (d == 0) return std::nullopt;
    q = Rat(mpz_class(num), d);
  } else if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
    if (whole.empty()) whole = "0";
    if (!all_digits(whole) || (!frac.empty() && !all_digits(frac)))
      return std::nullopt;
    mpz_class scale = 1;
    for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
    q = Rat(mpz_class(whole) * scale + mpz_class(frac.empty() ? "0" : frac),
            scale);
  } else {
    if (!all_digits(s)) return std::nullopt;
    q = Rat(mpz_class(s));
  }
  q.canonicalize();
  if (neg) q = -q;
  return q;
}

std::string rat_str(const Rat& q) { return q.get_str(); }

}  // namespace pgs
