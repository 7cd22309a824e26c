#include "codiag/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace codiag {

std::string rat_to_string(const Rat& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {

bool parse_ll(const std::string& s, long long& out) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (s[0] == '+' || s[0] == '-') i = 1;
  if (i == s.size()) return false;
  for (std::size_t j = i; j < s.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(s[j]))) return false;
  errno = 0;
  char* end = nullptr;
  long long v = std::strtoll(s.c_str(), &end, 10);
  if (errno != 0 || end != s.c_str() + s.size()) return false;
  out = v;
  return true;
}

}  // namespace

bool rat_parse(const std::string& text, Rat& out) {
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    long long num, den;
    if (!parse_ll(text.substr(0, slash), num)) return false;
    if (!parse_ll(text.substr(slash + 1), den)) return false;
    if (den <= 0) return false;
    out = Rat(num, den);
    return true;
  }
  auto dot = text.find('.');
  if (dot != std::string::npos) {
    std::string ip = text.substr(0, dot), fp = text.substr(dot + 1);
    if (fp.empty() || fp.size() > 15) return false;
    long long num;
    if (ip.empty() || ip == "-" || ip == "+") ip += "0";
    if (!parse_ll(ip, num)) return false;
    long long fnum;
    if (!parse_ll(fp, fnum) || fnum < 0) return false;
    long long den = 1;
    for (std::size_t i = 0; i < fp.size(); ++i) den *= 10;
    bool neg = !text.empty() && text[0] == '-';
    Rat whole(num);
    Rat frac(fnum, den);
    out = neg ? whole - frac : whole + frac;
    return true;
  }
  long long v;
  if (!parse_ll(text, v)) return false;
  out = Rat(v);
  return true;
}

}  // namespace codiag
