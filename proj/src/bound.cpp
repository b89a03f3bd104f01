#include "p5/bound.hpp"

#include <gmp.h>
#include <mpfr.h>

#include <cmath>
#include <limits>
#include <string>

#include "p5/common.hpp"

namespace p5 {

namespace {

constexpr mpfr_prec_t kEnclosurePrec = 128;
constexpr mpfr_prec_t kSweepPrec = 64;
constexpr mpfr_prec_t kMaxPrec = 1 << 20;

// Directed evaluation of f: log2, square, exp2 are all monotone increasing
// on the range involved (w >= 3 so log2 w > 0), so rounding every step in
// one direction bounds f(w) from that side.
void eval_f(mpfr_t out, int w, mpfr_rnd_t rnd) {
    if (w <= 0) {
        mpfr_set_zero(out, 1);
        return;
    }
    if (w == 1) {
        mpfr_set_ui(out, 1, MPFR_RNDN);
        return;
    }
    if (w == 2) {
        mpfr_set_ui(out, 3, MPFR_RNDN);
        return;
    }
    mpfr_t t;
    mpfr_init2(t, mpfr_get_prec(out));
    mpfr_set_si(t, w, MPFR_RNDN);  // exact
    mpfr_log2(t, t, rnd);
    mpfr_sqr(t, t, rnd);
    mpfr_exp2(out, t, rnd);
    mpfr_clear(t);
}

constexpr double kInf = std::numeric_limits<double>::infinity();

double add_up(double a, double b) { return std::nextafter(a + b, kInf); }
double mul_up(double a, double b) { return std::nextafter(a * b, kInf); }
double sub_down(double a, double b) { return std::nextafter(a - b, -kInf); }

struct SlackEnclosure {
    bool holds = false;
    bool certified = false;  // false: enclosures overlapped at this precision
    double slack_lo = 0.0;
    double slack_hi = 0.0;
};

// One-precision attempt at certifying f(w-1) + (w+2) f(m) <= f(w).
SlackEnclosure try_inequality(int w, mpfr_prec_t prec) {
    int m = w / 2;
    mpfr_t lhs_lo, lhs_hi, rhs_lo, rhs_hi, t;
    mpfr_inits2(prec, lhs_lo, lhs_hi, rhs_lo, rhs_hi, t, (mpfr_ptr) 0);

    eval_f(lhs_lo, w - 1, MPFR_RNDD);
    eval_f(t, m, MPFR_RNDD);
    mpfr_mul_ui(t, t, static_cast<unsigned long>(w) + 2, MPFR_RNDD);
    mpfr_add(lhs_lo, lhs_lo, t, MPFR_RNDD);

    eval_f(lhs_hi, w - 1, MPFR_RNDU);
    eval_f(t, m, MPFR_RNDU);
    mpfr_mul_ui(t, t, static_cast<unsigned long>(w) + 2, MPFR_RNDU);
    mpfr_add(lhs_hi, lhs_hi, t, MPFR_RNDU);

    eval_f(rhs_lo, w, MPFR_RNDD);
    eval_f(rhs_hi, w, MPFR_RNDU);

    SlackEnclosure r;
    if (mpfr_cmp(lhs_hi, rhs_lo) <= 0) {
        r.holds = true;
        r.certified = true;
    } else if (mpfr_cmp(rhs_hi, lhs_lo) < 0) {
        r.holds = false;
        r.certified = true;
    }
    if (r.certified) {
        mpfr_sub(t, rhs_lo, lhs_hi, MPFR_RNDD);
        r.slack_lo = mpfr_get_d(t, MPFR_RNDD);
        mpfr_sub(t, rhs_hi, lhs_lo, MPFR_RNDU);
        r.slack_hi = mpfr_get_d(t, MPFR_RNDU);
    }
    mpfr_clears(lhs_lo, lhs_hi, rhs_lo, rhs_hi, t, (mpfr_ptr) 0);
    return r;
}

SlackEnclosure certified_inequality(int w) {
    for (mpfr_prec_t prec = kEnclosurePrec; prec <= kMaxPrec; prec *= 2) {
        SlackEnclosure r = try_inequality(w, prec);
        if (r.certified) return r;
    }
    throw IntegrityError("bound: recursion inequality at w=" + std::to_string(w) +
                         " still ambiguous at " + std::to_string(kMaxPrec) + " bits");
}

// Certified f(a) <= f(b); resolves enclosure overlap by raising precision.
bool certified_le(int a, int b) {
    for (mpfr_prec_t prec = kEnclosurePrec; prec <= kMaxPrec; prec *= 2) {
        mpfr_t lo, hi;
        mpfr_inits2(prec, lo, hi, (mpfr_ptr) 0);
        eval_f(hi, a, MPFR_RNDU);
        eval_f(lo, b, MPFR_RNDD);
        int cmp_le = mpfr_cmp(hi, lo);
        bool decided_le = cmp_le <= 0;
        bool decided_gt = false;
        if (!decided_le) {
            eval_f(lo, a, MPFR_RNDD);
            eval_f(hi, b, MPFR_RNDU);
            decided_gt = mpfr_cmp(hi, lo) < 0;
        }
        mpfr_clears(lo, hi, (mpfr_ptr) 0);
        if (decided_le) return true;
        if (decided_gt) return false;
    }
    throw IntegrityError("bound: monotonicity comparison ambiguous at maximal precision");
}

// floor(f(w)) into a GMP integer, widening precision until floor(lo)=floor(hi).
void floor_f(mpz_t out, int w) {
    if (w <= 2) {
        mpz_set_ui(out, w <= 0 ? 0u : (w == 1 ? 1u : 3u));
        return;
    }
    mpz_t zhi;
    mpz_init(zhi);
    for (mpfr_prec_t prec = 96; prec <= kMaxPrec; prec *= 2) {
        mpfr_t lo, hi;
        mpfr_inits2(prec, lo, hi, (mpfr_ptr) 0);
        eval_f(lo, w, MPFR_RNDD);
        eval_f(hi, w, MPFR_RNDU);
        mpfr_get_z(out, lo, MPFR_RNDD);
        mpfr_get_z(zhi, hi, MPFR_RNDD);
        bool settled = mpz_cmp(out, zhi) == 0;
        mpfr_clears(lo, hi, (mpfr_ptr) 0);
        if (settled) {
            mpz_clear(zhi);
            return;
        }
    }
    mpz_clear(zhi);
    throw IntegrityError("bound: floor(f(" + std::to_string(w) +
                         ")) ambiguous at maximal precision");
}

}  // namespace

BoundFunction::BoundFunction(int omega_base, int precision_digits)
    : omega_base_(omega_base), precision_digits_(precision_digits) {
    if (omega_base < 1) throw UsageError("BoundFunction: omega_base must be >= 1");
    if (precision_digits < 1) throw UsageError("BoundFunction: precision_digits must be >= 1");
}

std::pair<double, double> BoundFunction::enclosure(int w) const {
    {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        auto it = cache_.find(w);
        if (it != cache_.end()) return it->second;
    }
    mpfr_t lo, hi;
    mpfr_inits2(kEnclosurePrec, lo, hi, (mpfr_ptr) 0);
    eval_f(lo, w, MPFR_RNDD);
    eval_f(hi, w, MPFR_RNDU);
    std::pair<double, double> r{mpfr_get_d(lo, MPFR_RNDD), mpfr_get_d(hi, MPFR_RNDU)};
    mpfr_clears(lo, hi, (mpfr_ptr) 0);
    std::lock_guard<std::mutex> lock(cache_mutex_);
    cache_.emplace(w, r);  // idempotent: any racer computed the same value
    return r;
}

FValue BoundFunction::f_value(int w) const {
    if (w < 0) throw UsageError("f_value: negative argument");
    FValue v;
    v.w = w;
    auto [lo, hi] = enclosure(w);
    v.lo = lo;
    v.hi = hi;
    mpfr_t x;
    mpfr_init2(x, static_cast<mpfr_prec_t>(precision_digits_) * 4 + 32);
    eval_f(x, w, MPFR_RNDN);
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", precision_digits_, x);
    v.decimal = s;
    mpfr_free_str(s);
    mpfr_clear(x);
    return v;
}

std::uint64_t BoundFunction::color_budget(int w) const {
    static_assert(sizeof(unsigned long) == 8, "needs 64-bit unsigned long");
    if (w < 0) throw UsageError("color_budget: negative argument");
    mpz_t z;
    mpz_init(z);
    floor_f(z, w);
    if (mpz_sizeinbase(z, 2) > 64) {
        mpz_clear(z);
        throw UsageError("color_budget: floor(f(" + std::to_string(w) +
                         ")) exceeds 64 bits, use color_budget_string");
    }
    std::uint64_t r = mpz_get_ui(z);
    mpz_clear(z);
    return r;
}

std::string BoundFunction::color_budget_string(int w) const {
    if (w < 0) throw UsageError("color_budget: negative argument");
    mpz_t z;
    mpz_init(z);
    floor_f(z, w);
    char* s = mpz_get_str(nullptr, 10, z);
    std::string r(s);
    void (*freefunc)(void*, std::size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefunc);
    freefunc(s, r.size() + 1);
    mpz_clear(z);
    return r;
}

InequalityReport BoundFunction::check_recursion_inequality(int w) const {
    if (w < 5) throw UsageError("check_recursion_inequality: needs w >= 5");
    SlackEnclosure s = certified_inequality(w);
    InequalityReport r;
    r.w = w;
    r.holds = s.holds;
    r.slack_lo = s.slack_lo;
    r.slack_hi = s.slack_hi;
    return r;
}

HypothesesReport BoundFunction::check_binding_hypotheses(int omega_base, int w_max) const {
    if (omega_base < 1) throw UsageError("check_binding_hypotheses: omega_base must be >= 1");
    if (w_max < omega_base) throw UsageError("check_binding_hypotheses: w_max below omega_base");

    HypothesesReport rep;
    rep.omega_base = omega_base;
    rep.w_max = w_max;
    rep.base_case_by_citation = (omega_base == 4);
    rep.min_slack = kInf;

    // One low-precision directed sweep; the rare overlapping enclosure gets a
    // high-precision recheck. Doubles hold f up to w ~ 4e9, far past any w_max
    // this artifact meets.
    std::vector<double> flo(static_cast<std::size_t>(w_max) + 1);
    std::vector<double> fhi(static_cast<std::size_t>(w_max) + 1);
    mpfr_t lo, hi;
    mpfr_inits2(kSweepPrec, lo, hi, (mpfr_ptr) 0);
    for (int w = 0; w <= w_max; ++w) {
        eval_f(lo, w, MPFR_RNDD);
        eval_f(hi, w, MPFR_RNDU);
        flo[static_cast<std::size_t>(w)] = mpfr_get_d(lo, MPFR_RNDD);
        fhi[static_cast<std::size_t>(w)] = mpfr_get_d(hi, MPFR_RNDU);
    }
    mpfr_clears(lo, hi, (mpfr_ptr) 0);

    rep.monotone = true;
    for (int w = 0; w < w_max; ++w) {
        if (fhi[static_cast<std::size_t>(w)] <= flo[static_cast<std::size_t>(w) + 1]) continue;
        if (!certified_le(w, w + 1)) {
            rep.monotone = false;
            break;
        }
    }

    rep.recursion_holds = true;
    for (int w = omega_base + 1; w <= w_max; ++w) {
        std::size_t wi = static_cast<std::size_t>(w);
        double lhs_hi = add_up(fhi[wi - 1], mul_up(static_cast<double>(w) + 2.0,
                                                   fhi[static_cast<std::size_t>(w / 2)]));
        double slack_lo;
        double rhs_lo = flo[wi];
        if (lhs_hi <= rhs_lo && std::isfinite(lhs_hi)) {
            slack_lo = sub_down(rhs_lo, lhs_hi);
        } else {
            SlackEnclosure s = certified_inequality(w);
            if (!s.holds) {
                rep.recursion_holds = false;
                rep.failed_w.push_back(w);
                continue;
            }
            slack_lo = s.slack_lo;
        }
        if (slack_lo < rep.min_slack) {
            rep.min_slack = slack_lo;
            rep.min_slack_w = w;
        }
    }
    if (rep.min_slack_w < 0) rep.min_slack = 0.0;  // vacuous inequality range
    return rep;
}

}  // namespace p5
