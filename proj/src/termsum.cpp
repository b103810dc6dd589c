#include "tropfact/termsum.hpp"

#include <algorithm>
#include <functional>

namespace tropfact {

Rational AffineForm::coefficient(Var v) const {
  auto it = std::lower_bound(coeffs.begin(), coeffs.end(), v,
                             [](const std::pair<Var, Rational>& p, Var x) { return p.first < x; });
  return it != coeffs.end() && it->first == v ? it->second : Rational(0);
}

Rational AffineForm::evaluate(const QVector& point) const {
  Rational s = constant;
  for (const auto& [v, c] : coeffs) s += c * point.at(v);
  return s;
}

AffineForm AffineForm::without(Var v) const {
  AffineForm f;
  f.constant = constant;
  for (const auto& p : coeffs)
    if (p.first != v) f.coeffs.push_back(p);
  return f;
}

bool operator<(const AffineForm& a, const AffineForm& b) {
  if (a.coeffs != b.coeffs) return a.coeffs < b.coeffs;
  return a.constant < b.constant;
}

AffineForm variable(Var v) { return AffineForm{0, {{v, Rational(1)}}}; }

namespace {

// f = scale * g with g's first coefficient 1.
Rational normalize(AffineForm& f) {
  if (f.is_constant()) return f.constant;
  Rational scale = f.coeffs.front().second;
  f.constant /= scale;
  for (auto& p : f.coeffs) p.second /= scale;
  return scale;
}

Integer binomial(long n, long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

}  // namespace

void TermSum::add(Rational c, const Monomial& numerator, const std::vector<AffineForm>& forms) {
  if (sgn(c) == 0) return;
  std::map<AffineForm, int> denom;
  for (AffineForm f : forms) {
    Rational scale = normalize(f);
    if (sgn(scale) == 0) throw ZeroDenominator("TermSum: zero denominator");
    c /= scale;
    if (!f.is_constant()) ++denom[f];
  }
  Monomial num;
  for (const auto& p : numerator)
    if (p.second != 0) num.push_back(p);
  std::sort(num.begin(), num.end());
  add_normalized(c, std::move(num), Denominator(denom.begin(), denom.end()));
}

void TermSum::add_normalized(const Rational& c, Monomial numerator, Denominator denominator) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(Key{std::move(numerator), std::move(denominator)}, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

TermSum& TermSum::operator+=(const TermSum& o) {
  for (const auto& [key, c] : o.terms_) add_normalized(c, key.first, key.second);
  return *this;
}

TermSum& TermSum::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, v] : terms_) v *= c;
  return *this;
}

Rational TermSum::evaluate(const QVector& point) const {
  Rational total = 0;
  for (const auto& [key, c] : terms_) {
    Rational num = c, den = 1;
    for (const auto& [v, e] : key.first)
      for (int i = 0; i < e; ++i) num *= point.at(v);
    for (const auto& [f, m] : key.second) {
      Rational x = f.evaluate(point);
      if (sgn(x) == 0) throw ZeroDenominator("TermSum: denominator vanishes at the evaluation point");
      for (int i = 0; i < m; ++i) den *= x;
    }
    total += num / den;
  }
  return total;
}

std::set<Var> TermSum::variables() const {
  std::set<Var> out;
  for (const auto& [key, c] : terms_) {
    for (const auto& p : key.first) out.insert(p.first);
    for (const auto& [f, m] : key.second)
      for (const auto& p : f.coeffs) out.insert(p.first);
  }
  return out;
}

std::vector<AffineForm> TermSum::denominator_forms() const {
  std::set<AffineForm> out;
  for (const auto& [key, c] : terms_)
    for (const auto& [f, m] : key.second) out.insert(f);
  return {out.begin(), out.end()};
}

std::string to_string(const AffineForm& f, const std::vector<std::string>& names) {
  std::string s;
  auto name = [&](Var v) { return v < names.size() ? names[v] : "e" + std::to_string(v); };
  for (const auto& [v, c] : f.coeffs) {
    if (!s.empty()) s += sgn(c) < 0 ? " - " : " + ";
    else if (sgn(c) < 0) s += "-";
    Rational a = abs(c);
    if (a != 1) s += tropfact::to_string(a) + "*";
    s += name(v);
  }
  if (sgn(f.constant) != 0 || s.empty()) {
    if (!s.empty()) s += sgn(f.constant) < 0 ? " - " : " + ";
    s += tropfact::to_string(s.empty() ? f.constant : Rational(abs(f.constant)));
  }
  return s;
}

std::string TermSum::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [key, c] : terms_) {
    if (!s.empty()) s += " + ";
    s += tropfact::to_string(c);
    for (const auto& [v, e] : key.first)
      s += "*" + (v < names.size() ? names[v] : "e" + std::to_string(v)) + (e > 1 ? "^" + std::to_string(e) : "");
    for (const auto& [f, m] : key.second)
      s += "/(" + tropfact::to_string(f, names) + ")" + (m > 1 ? "^" + std::to_string(m) : "");
  }
  return s;
}

TermSum residue_step(const TermSum& t, Var v) {
  TermSum out;
  for (const auto& [key, c] : t.terms()) {
    int pole = 0;
    int num_power = 0;
    TermSum::Monomial numerator;
    for (const auto& p : key.first) {
      if (p.first == v)
        num_power = p.second;
      else
        numerator.push_back(p);
    }
    struct Factor {
      Rational a;      // coefficient of e_v
      AffineForm rest;  // the form at e_v = 0
      int m;
    };
    std::vector<Factor> factors;
    for (const auto& [f, m] : key.second) {
      Rational a = f.coefficient(v);
      if (sgn(a) == 0) {
        factors.push_back({0, f, m});
        continue;
      }
      AffineForm rest = f.without(v);
      if (rest.is_constant() && sgn(rest.constant) == 0) {
        pole += m;  // f = e_v after normalization
        continue;
      }
      factors.push_back({a, rest, m});
    }
    const int order = pole - 1 - num_power;
    if (order < 0) continue;
    // coefficient of e_v^order in prod (rest + a e_v)^(-m)
    std::vector<int> js(factors.size(), 0);
    std::function<void(std::size_t, int)> expand = [&](std::size_t i, int left) {
      if (i == factors.size()) {
        if (left != 0) return;
        Rational coef = c;
        std::vector<AffineForm> forms;
        for (std::size_t t2 = 0; t2 < factors.size(); ++t2) {
          const auto& f = factors[t2];
          int j = js[t2];
          if (j > 0) {
            Rational aj = 1;
            for (int r = 0; r < j; ++r) aj *= f.a;
            coef *= Rational(binomial(f.m + j - 1, j)) * aj * (j % 2 ? -1 : 1);
          }
          for (int r = 0; r < f.m + j; ++r) forms.push_back(f.rest);
        }
        out.add(coef, numerator, forms);
        return;
      }
      const int top = sgn(factors[i].a) == 0 ? 0 : left;
      for (int j = 0; j <= top; ++j) {
        js[i] = j;
        expand(i + 1, left - j);
      }
      js[i] = 0;
    };
    expand(0, order);
  }
  return out;
}

}  // namespace tropfact
