#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tropfact/rational.hpp"

namespace tropfact {

using Var = std::uint32_t;

/// c + sum a_v e_v with sparse, sorted, nonzero coefficients.
struct AffineForm {
  Rational constant;
  std::vector<std::pair<Var, Rational>> coeffs;

  bool is_constant() const { return coeffs.empty(); }
  Rational coefficient(Var v) const;
  Rational evaluate(const QVector& point) const;
  /// The form with the e_v term removed (its value on e_v = 0).
  AffineForm without(Var v) const;
  friend bool operator==(const AffineForm&, const AffineForm&) = default;
  friend bool operator<(const AffineForm& a, const AffineForm& b);
};

AffineForm variable(Var v);

struct ZeroDenominator : std::domain_error {
  using std::domain_error::domain_error;
};

/// Sum of coefficient * monomial / prod (affine form)^multiplicity. Forms are
/// stored scaled so their first variable coefficient is 1; equal terms merge.
class TermSum {
 public:
  using Monomial = std::vector<std::pair<Var, int>>;           // sorted, positive exponents
  using Denominator = std::vector<std::pair<AffineForm, int>>;  // sorted, positive multiplicities
  using Key = std::pair<Monomial, Denominator>;

  /// Adds c * numerator / prod(forms). Constant forms fold into c; a zero
  /// constant form throws ZeroDenominator.
  void add(Rational c, const Monomial& numerator, const std::vector<AffineForm>& forms);
  void add(Rational c, const std::vector<AffineForm>& forms) { add(std::move(c), {}, forms); }
  TermSum& operator+=(const TermSum& o);
  TermSum& operator*=(const Rational& c);

  const std::map<Key, Rational>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  Rational evaluate(const QVector& point) const;
  std::set<Var> variables() const;
  std::vector<AffineForm> denominator_forms() const;
  std::string to_string(const std::vector<std::string>& names) const;

 private:
  void add_normalized(const Rational& c, Monomial numerator, Denominator denominator);
  std::map<Key, Rational> terms_;
};

/// Coefficient of e_v^{-1} in the Laurent expansion at e_v = 0, the other
/// variables generic.
TermSum residue_step(const TermSum& t, Var v);

std::string to_string(const AffineForm& f, const std::vector<std::string>& names);

}  // namespace tropfact
