#include "guesswork/rational.hpp"

#include <cctype>

namespace guesswork {

namespace {

bool is_integer_token(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rat parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw Error("empty number");

  auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!is_integer_token(num) || !is_integer_token(den))
      throw Error("malformed fraction: '" + text + "'");
    mpz_class n(num), d(den);
    if (d == 0) throw Error("zero denominator: '" + text + "'");
    Rat r(n, d);
    r.canonicalize();
    return r;
  }

  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
    bool neg = false;
    if (!ip.empty() && (ip[0] == '+' || ip[0] == '-')) {
      neg = ip[0] == '-';
      ip = ip.substr(1);
    }
    if (ip.empty() && fp.empty()) throw Error("malformed number: '" + text + "'");
    for (char c : ip + fp)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw Error("malformed number: '" + text + "'");
    mpz_class n(ip.empty() ? std::string("0") : ip);
    mpz_class d = 1;
    for (char c : fp) {
      n = n * 10 + (c - '0');
      d *= 10;
    }
    if (neg) n = -n;
    Rat r(n, d);
    r.canonicalize();
    return r;
  }

  if (!is_integer_token(s)) throw Error("malformed number: '" + text + "'");
  return Rat(mpz_class(s));
}

std::string to_fraction(const Rat& value) { return value.get_str(); }

std::string to_decimal(const Rat& value, int digits) {
  mpz_class num = value.get_num(), den = value.get_den();
  bool neg = num < 0;
  if (neg) num = -num;
  mpz_class ip = num / den, rem = num % den;
  std::string out = (neg && (ip != 0 || rem != 0)) ? "-" : "";
  out += ip.get_str();
  if (rem == 0 || digits <= 0) return out;
  std::string frac;
  for (int i = 0; i < digits && rem != 0; ++i) {
    rem *= 10;
    mpz_class digit = rem / den;
    frac.push_back(static_cast<char>('0' + digit.get_si()));
    rem %= den;
  }
  while (!frac.empty() && frac.back() == '0') frac.pop_back();
  if (!frac.empty()) out += "." + frac;
  return out;
}

Rat rat_sum(const std::vector<Rat>& values) {
  Rat total = 0;
  for (const Rat& v : values) total += v;
  return total;
}

}  // namespace guesswork
