#pragma once

#include "padmzv/lipoly.hpp"

namespace padmzv {

// Diagnostics of one fixed-point solve, recorded for the run manifest.
struct SolveInfo {
    long n_int = 0;   // working relative precision of the streams
    long k_decl = 0;  // block index where coordinates are extracted
    long k_run = 0;   // last block computed (> k_decl only adds verification)
    long terms = 0;   // stream length: p^k_run - 1
    long pair_solves = 0;
    std::map<long, long> achieved;  // weight -> declared absolute precision
};

// Generating series of the Frobenius-fixed path from the tangential base
// "1 at 0" to "-1 at 1"; the coefficient of a word is the p-adic multiple
// zeta value attached to it.  Coefficients of weight s carry absolute
// precision info.achieved[s] <= N.
struct Associator {
    long p = 0, N = 0, W = 0, D = 0;
    NCSeries<PadicRing> series;
    SolveInfo info;
};

// Solves the fixed-point system weight by weight: per-word coefficient
// streams are partially summed at p-power cutoffs, a single harmonic-sum
// divergence is removed, and the regularized limits couple each word
// linearly with its reversal.  The output is projected onto the group-like
// locus and validated (empty coefficient 1, weight-1 and weight-2 vanishing,
// shuffle coherence before projection, group-likeness after, residual
// decay); any failed check throws SolverError.  work_order_seed permutes the
// solve order inside each weight; the result is independent of it.
// D = 0 picks the automatic verification depth.
Associator compute_associator(long p, long N, long W, long D = 0,
                              unsigned long work_order_seed = 0);

struct Basepoint {
    enum class Kind { t0, t1, point };
    Kind kind = Kind::t0;
    Rational z = 0;

    static Basepoint tangential_zero() { return {Kind::t0, 0}; }
    static Basepoint tangential_one() { return {Kind::t1, 0}; }
    static Basepoint at(const Rational& z) { return {Kind::point, z}; }
};

enum class Route { af, cl, disc0, disc1, samedisc };
const char* route_name(Route r);

// Disc of a rational point: 0 when v(z) >= 1, 1 when v(1-z) >= 1.  Points
// on a puncture or outside both discs are unsupported geometry.
int point_disc(const Rational& z, long p);

// Parallel-transport series for the path b -> c at the associator's (W, N),
// with the route taken.  Supported: t0 -> t1 and back, t0 -> either disc,
// t1 -> disc of 1, and point -> point within one disc.
std::pair<NCSeries<PadicRing>, Route> path_series(const Basepoint& b, const Basepoint& c,
                                                  const Associator& A);

struct ColemanValue {
    Padic value;
    Route route;
};

// Iterated integral from b to c of the functional (weight <= W), through
// the route the geometry selects.
ColemanValue coleman_iterint(const Basepoint& b, const Basepoint& c, const ShuffleElement& f,
                             const Associator& A);
ColemanValue coleman_iterint(const Basepoint& b, const Basepoint& c, const Word& w,
                             const Associator& A);

// Matrix-entry symbol I_b^c(w): a word functional between two basepoints.
struct FormalPeriod {
    Basepoint lower;
    Basepoint upper;
    ShuffleElement functional;
};

// Evaluation of the symbol at the comparison point: pairing with the path
// series for lower -> upper.
ColemanValue per_af(const FormalPeriod& sym, const Associator& A);

// Classical-period pipeline: pairs the word with the loop series
// nc_mul(associator, nc_inverse(unit)), the unit series being the canonical
// trivialization on the Hodge side.
Padic per_cl(const Word& w, const Associator& A);

// Coefficient of w in the associator (weight <= W).
Padic pmzv_value(const Word& w, const Associator& A);

}  // namespace padmzv
