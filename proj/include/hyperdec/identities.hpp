#pragma once

#include "hyperdec/functions.hpp"
#include "hyperdec/series.hpp"

#include <map>
#include <string>
#include <vector>

namespace hyperdec {

// How a registered identity's right-hand side is constructed.
enum class RhsKind { OperatorForm, SeriesForm, LimitForm };
const char* rhs_kind_name(RhsKind kind);  // "operator-form" etc.

// Named parameter assignment for one identity instance. Scalar slots hold a
// single entry; per-variable slots hold one entry per x (or y) variable.
using ParamSet = std::map<std::string, std::vector<Rational>>;

struct ParamSlot {
  enum class Count { One, PerX, PerY };
  std::string name;
  Count count;
};

struct IdentityRecord {
  std::string id;           // stable key, e.g. "Eta3.op"
  std::string lhs_name;     // family (or product) on the left-hand side
  RhsKind rhs_kind;
  std::string display;      // catalog key, e.g. "Eq.(318)"
  std::vector<std::string> errata;  // corrections applied by default
  std::vector<ParamSlot> slots;
  bool arity_generic;       // false: fixed at one x and one y variable
};

const std::vector<IdentityRecord>& identity_registry();
const IdentityRecord* find_identity(const std::string& id);

struct BuildOptions {
  // When false, records carrying errata are built exactly as printed in the
  // source displays; verification is then expected to fail (negative
  // control), and the mismatch localizes the defect.
  bool apply_errata = true;
};

// Truncations of the two sides of an identity, coefficient-exact for
// S = Rational and in floating point for S = double. `arity` is ignored for
// fixed-arity records; generic records take x-count (and y-count) from it.
template <class S>
TruncatedSeries<S> build_lhs(const std::string& id, const ParamSet& params,
                             Arity arity, int degree,
                             const BuildOptions& opt = {});
template <class S>
TruncatedSeries<S> build_rhs(const std::string& id, const ParamSet& params,
                             Arity arity, int degree,
                             const BuildOptions& opt = {});

// Convenience wrappers matching the registry kinds.
RationalSeries build_rhs_operator(const std::string& id, const ParamSet& params,
                                  Arity arity, int degree);
RationalSeries build_rhs_series(const std::string& id, const ParamSet& params,
                                Arity arity, int degree);

// The single-sum closed form of the FA.lemma1 decomposition at two variables;
// the general triangular-index machinery must reproduce it exactly.
RationalSeries fa_lemma1_closed_m2(const ParamSet& params, int degree);

// Numeric value of the left-hand side at a point (true function values, via
// evalNumeric on each factor).
double eval_lhs_numeric(const std::string& id, const ParamSet& params,
                        Arity arity, const std::vector<double>& pt,
                        const EvalOptions& opt = {});

// Numeric value of the right-hand side: the RHS construction is built as a
// double-coefficient truncation at growing degree and evaluated at the point
// until consecutive degrees agree within tol/10. Throws NonConvergence when
// the degree schedule is exhausted.
double build_rhs_numeric(const std::string& id, const ParamSet& params,
                         Arity arity, const std::vector<double>& pt, double tol,
                         const BuildOptions& opt = {});

// Scale factor used by the finite-epsilon consistency record "HA.limit".
inline constexpr double kLimitEpsilon = 1e-3;

// Evaluate a double truncation as a polynomial at a point.
double eval_at(const DoubleSeries& series, const std::vector<double>& pt);

}  // namespace hyperdec
