#include "supertask/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace supertask {

Rat make_rat(long long num, long long den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rat q(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
  q.canonicalize();
  return q;
}

Rat rat_from_uint(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  mpz_class n, d;
  mpz_import(n.get_mpz_t(), 1, -1, sizeof(num), 0, 0, &num);
  mpz_import(d.get_mpz_t(), 1, -1, sizeof(den), 0, 0, &den);
  Rat q(n, d);
  q.canonicalize();
  return q;
}

std::string rat_string(const Rat& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

namespace {

bool is_integer_literal(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rat parse_rat(const std::string& text) {
  const auto bad = [&] { return std::invalid_argument("not a rational: '" + text + "'"); };
  if (text.empty()) throw bad();

  if (auto slash = text.find('/'); slash != std::string::npos) {
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den)) throw bad();
    const mpz_class num_z(num);
    const mpz_class den_z(den);
    if (den_z == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
    Rat q(num_z, den_z);
    q.canonicalize();
    return q;
  }

  if (auto dot = text.find('.'); dot != std::string::npos) {
    std::string head = text.substr(0, dot);
    const std::string frac = text.substr(dot + 1);
    bool negative = false;
    if (!head.empty() && (head[0] == '-' || head[0] == '+')) {
      negative = head[0] == '-';
      head = head.substr(1);
    }
    if (head.empty() && frac.empty()) throw bad();
    for (char c : head + frac)
      if (!std::isdigit(static_cast<unsigned char>(c))) throw bad();
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpz_class units = head.empty() ? mpz_class(0) : mpz_class(head);
    mpz_class num = units * scale + (frac.empty() ? mpz_class(0) : mpz_class(frac));
    if (negative) num = -num;
    Rat q(num, scale);
    q.canonicalize();
    return q;
  }

  if (!is_integer_literal(text)) throw bad();
  return Rat(mpz_class(text));
}

double rat_double(const Rat& value) { return value.get_d(); }

}  // namespace supertask
