#ifndef TRANSCEND_MEASURE_HPP
#define TRANSCEND_MEASURE_HPP

#include <functional>
#include <optional>

#include "transcend/ball.hpp"
#include "transcend/monomial.hpp"
#include "transcend/relations.hpp"
#include "transcend/systems.hpp"

namespace transcend {

enum class TailMode { certified, heuristic };
enum class ValueStatus { nonzero, undetermined_zero, certified_zero };
enum class ScanStrategy { exhaustive, lattice };

// Rigorous point evaluation of a scalar function.
//   certified, differential: partial sum plus the factorial tail
//     sum_{n>=T} (C|alpha|)^n / n! from the declared coefficient bound C.
//   certified, mahler: requires |alpha| < 1; evaluates directly when
//     2B|alpha| < 1, otherwise pulls back to alpha^(q^ell) via the functional
//     equation with exact matrix transport; geometric tail from house(c_n)
//     <= G*B^n.
//   heuristic: radius = |difference of two truncation orders| * 2^4 on top of
//     the ball rounding; non-rigorous by design.
ComplexBall eval_at(const FunctionSpec& f, const FieldElement& alpha, mpfr_prec_t precision,
                    TailMode mode = TailMode::certified, int embedding = 0);

// Values (1, f_1(alpha), ..., f_m(alpha)) with enough source data to recompute
// at a different precision.  `exact` marks entries known as exact rationals
// (degree-0 pipelines, rational f(0)); `value_relations` optionally supplies
// the relation ideal used to upgrade zero ball hits to certified zeros.
struct ValueVector {
    std::vector<ComplexBall> omega;
    std::vector<std::optional<Rational>> exact;
    std::vector<FunctionSpec> source; // size m when recomputable from specs
    FieldElement alpha;
    mpfr_prec_t precision = 256;
    TailMode mode = TailMode::certified;
    int t = 1;
    int embedding = 0;
    std::vector<MultiPoly<FieldElement>> value_relations;

    size_t m() const { return omega.empty() ? 0 : omega.size() - 1; }
    ValueVector at_precision(mpfr_prec_t prec) const;
};

ValueVector make_value_vector(const std::vector<FunctionSpec>& f, const FieldElement& alpha,
                              mpfr_prec_t precision, TailMode mode = TailMode::certified,
                              int t = 1, int embedding = 0);
ValueVector rational_value_vector(const Rational& xi, mpfr_prec_t precision);

struct PolyValue {
    ComplexBall value;
    ValueStatus status = ValueStatus::nonzero;
};

// Outward-rounded ball of P(f_1(alpha), ..., f_m(alpha)); exact when every
// entry P touches is exactly known.  A zero-containing ball reports
// undetermined_zero unless the supplied relation ideal certifies the zero.
PolyValue poly_value(const MultiPoly<Integer>& P, const ValueVector& omega);

// One scanned polynomial: dense coefficients over MonomialBasis(m, d) order.
struct ScanRecord {
    std::vector<long> coeffs;
    int degree = 0;
    long height = 0;
    double log2_abs = 0; // log2 of the certified lower bound on |P(omega)|
    double exponent = 0; // -log2_abs / (d^t * log2 height); 0 when height < 2
    ValueStatus status = ValueStatus::nonzero;
};

struct MeasureReport {
    int d = 1;
    int t = 1;
    long H_max = 1;
    ScanStrategy strategy = ScanStrategy::exhaustive;
    mpfr_prec_t precision = 256;
    unsigned long long seed = 0;
    size_t total_records = 0;
    size_t nonzero_records = 0;
    size_t zero_records = 0;

    static constexpr size_t zero_cap = 1024;
    std::vector<ScanRecord> zeros; // first zero_cap zero-status records

    // exponent statistic extremes over nonzero records of height >= 2
    std::optional<ScanRecord> min_record, max_record;
    double min_exponent = 0;
    double max_exponent = 0;

    // fitted constants for |P(omega)| >= C1 * H(P)^(-C2 * d^t):
    // C2 is the largest observed exponent, C1 the resulting floor.
    double c2 = 0;
    double c1_log2 = 0;
    double c1 = 0;
    std::optional<ScanRecord> c1_record;

    size_t lattice_candidates = 0;
};

// Exhaustive (or lattice-seeded) scan over integer polynomials of degree <= d
// and height <= H_max.  The sink, when supplied, receives every record in
// canonical enumeration order and forces a sequential scan.
MeasureReport liouville_scan(const ValueVector& omega, int d, long H_max,
                             ScanStrategy strategy = ScanStrategy::exhaustive,
                             unsigned long long seed = 0,
                             const std::function<void(const ScanRecord&)>& sink = {});

struct WdReport {
    int d = 1;
    int t = 1;
    mpfr_prec_t precision = 256;
    std::vector<long> schedule;
    std::vector<double> raw;        // best exponent at height <= H, normalized by log H
    std::vector<double> cumulative; // running maximum of raw (monotone)
    double estimate = 0;            // raw value at the largest H (limsup proxy)
    size_t zero_records = 0;
    std::vector<ScanRecord> zeros;
};

// Best-approximation exponent estimates along an ascending height schedule
// (entries >= 2).
WdReport estimate_wd(const ValueVector& omega, int d, const std::vector<long>& schedule);

struct ReferenceC2 {
    std::optional<Rational> exact; // set when sqrt(m) is rational
    ComplexBall ball;
};

// sqrt(m) * 4^m * h^(m+1)
ReferenceC2 reference_c2(long m, long h, mpfr_prec_t prec = 64);

} // namespace transcend

#endif
