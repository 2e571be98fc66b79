#include "smtkit/algebra/numeric.hpp"

#include <cctype>

namespace smtkit {

Rational parse_rational(const std::string& raw) {
  std::string text;
  for (char ch : raw)
    if (!std::isspace(static_cast<unsigned char>(ch))) text += ch;
  if (text.empty()) throw InputError("empty number");
  bool negative = false;
  std::size_t pos = 0;
  if (text[0] == '+' || text[0] == '-') {
    negative = text[0] == '-';
    pos = 1;
  }
  auto digits = [&](std::size_t from) {
    std::size_t end = from;
    while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
    return end;
  };
  std::size_t end = digits(pos);
  Rational value;
  if (end < text.size() && text[end] == '/') {
    if (end == pos) throw InputError("malformed rational '" + raw + "'", 0);
    std::size_t den_end = digits(end + 1);
    if (den_end != text.size() || den_end == end + 1)
      throw InputError("malformed rational '" + raw + "'", static_cast<std::ptrdiff_t>(end));
    Integer den(text.substr(end + 1));
    if (den == 0) throw InputError("zero denominator in '" + raw + "'", static_cast<std::ptrdiff_t>(end));
    value = Rational(Integer(text.substr(pos, end - pos)), den);
  } else {
    std::string int_part = text.substr(pos, end - pos);
    std::string frac_part;
    if (end < text.size() && text[end] == '.') {
      std::size_t frac_end = digits(end + 1);
      frac_part = text.substr(end + 1, frac_end - end - 1);
      end = frac_end;
    }
    if (end != text.size() || (int_part.empty() && frac_part.empty()))
      throw InputError("malformed number '" + raw + "'", static_cast<std::ptrdiff_t>(end));
    Integer scale = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
    Integer whole(int_part.empty() ? std::string("0") : int_part);
    Integer frac(frac_part.empty() ? std::string("0") : frac_part);
    value = Rational(whole * scale + frac, scale);
  }
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& q) { return q.str(); }

}  // namespace smtkit
