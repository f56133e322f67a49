#include "cohn/verifier.hpp"

#include <algorithm>
#include <cmath>

#include "cohn/derivatives.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cohn {

namespace {

constexpr double kSqrt3Over2 = 0.8660254037844386;
constexpr double kPart4Tolerance = 1e-6;

bool canonical_less(const BoxVerdict& a, const BoxVerdict& b) {
    if (a.box.p.lo != b.box.p.lo) return a.box.p.lo < b.box.p.lo;
    if (a.box.p.hi != b.box.p.hi) return a.box.p.hi < b.box.p.hi;
    if (a.box.sigma.lo != b.box.sigma.lo) return a.box.sigma.lo < b.box.sigma.lo;
    return a.box.sigma.hi < b.box.sigma.hi;
}

// Constancy check used by MAS part 4 certificates.
Verdict classify_delta_const(const Box& box, double& bound) {
    try {
        Interval d = delta_refined(box);
        bound = width(d);
        if (d.contains(kSqrt3Over2) && width(d) <= kPart4Tolerance)
            return Verdict::proven;
        if (!d.contains(kSqrt3Over2)) return Verdict::refuted;
    } catch (const DomainError&) {
        bound = 0.0;
    }
    return Verdict::undecided;
}

struct Classified {
    Verdict verdict = Verdict::undecided;
    bool evaluated = false;
    double bound = 0.0;
};

Classified classify(const SignClaim& claim, const Box& box) {
    Classified c;
    if (claim.fn == FunctionId::delta) {
        c.verdict = classify_delta_const(box, c.bound);
        c.evaluated = true;
        return c;
    }
    std::optional<Interval> e = enclose_function(claim.fn, box);
    if (!e) return c; // domain failure: split further or leave undecided
    c.evaluated = true;
    if (claim.sign == Sign::positive) {
        if (e->lo > claim.margin) {
            c.verdict = Verdict::proven;
            c.bound = e->lo;
        } else if (e->hi < 0.0) {
            c.verdict = Verdict::refuted;
            c.bound = e->hi;
        }
    } else {
        if (e->hi < -claim.margin) {
            c.verdict = Verdict::proven;
            c.bound = e->hi;
        } else if (e->lo > 0.0) {
            c.verdict = Verdict::refuted;
            c.bound = e->lo;
        }
    }
    return c;
}

struct WorkBox {
    Box box;
    int depth = 0;
};

SignCertificate run_bisection(const SignClaim& claim, const VerifyConfig& cfg,
                              bool parallel) {
    if (!(claim.region.p.lo > 1.0) || !(claim.region.sigma.lo >= 1.0))
        throw InvalidRegion("claim region outside D_p");
    if (claim.margin < 0.0) throw InvalidRegion("margin must be nonnegative");

    SignCertificate cert;
    cert.claim = claim;
    cert.config = cfg;

    // Strict signs are unprovable across p = 2: every claimable function
    // vanishes identically there.
    if (claim.fn != FunctionId::delta && claim.region.p.contains(2.0)) {
        cert.status = Status::undecided;
        cert.boxes.push_back({claim.region, Verdict::undecided, 0.0, 0});
        return cert;
    }

    const double p_extent = width(claim.region.p);
    const double s_extent = width(claim.region.sigma);

    std::vector<WorkBox> frontier{{claim.region, 0}};
    bool refuted = false;

    while (!frontier.empty() && !refuted) {
        const int n = static_cast<int>(frontier.size());
        std::vector<Classified> results(n);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(cfg.workers) if (parallel && cfg.workers > 1)
#endif
        for (int i = 0; i < n; ++i) results[i] = classify(claim, frontier[i].box);

        cert.evaluations += n;

        std::vector<WorkBox> next;
        for (int i = 0; i < n; ++i) {
            const WorkBox& wb = frontier[i];
            cert.max_depth_used = std::max(cert.max_depth_used, wb.depth);
            if (refuted) {
                // refutation already recorded this level; freeze the rest
                cert.boxes.push_back({wb.box, Verdict::undecided, 0.0, wb.depth});
                continue;
            }
            if (results[i].verdict == Verdict::proven) {
                cert.boxes.push_back(
                    {wb.box, Verdict::proven, results[i].bound, wb.depth});
                continue;
            }
            if (results[i].verdict == Verdict::refuted) {
                BoxVerdict rv{wb.box, Verdict::refuted, results[i].bound, wb.depth};
                cert.boxes.push_back(rv);
                cert.refuting_box = rv;
                refuted = true;
                continue;
            }
            const double rel_p = p_extent > 0.0 ? width(wb.box.p) / p_extent : 0.0;
            const double rel_s = s_extent > 0.0 ? width(wb.box.sigma) / s_extent : 0.0;
            const bool can_split = std::max(rel_p, rel_s) >= cfg.min_width &&
                                   wb.depth < cfg.max_depth;
            if (!can_split) {
                cert.boxes.push_back({wb.box, Verdict::undecided, 0.0, wb.depth});
                continue;
            }
            if (rel_p > rel_s) {
                double m = midpoint(wb.box.p);
                next.push_back({{Interval{wb.box.p.lo, m}, wb.box.sigma}, wb.depth + 1});
                next.push_back({{Interval{m, wb.box.p.hi}, wb.box.sigma}, wb.depth + 1});
            } else {
                double m = midpoint(wb.box.sigma);
                next.push_back({{wb.box.p, Interval{wb.box.sigma.lo, m}}, wb.depth + 1});
                next.push_back({{wb.box.p, Interval{m, wb.box.sigma.hi}}, wb.depth + 1});
            }
        }
        if (refuted) {
            // keep the covering complete: children split before the
            // refutation was seen become frozen undecided leaves
            for (const auto& wb : next)
                cert.boxes.push_back({wb.box, Verdict::undecided, 0.0, wb.depth});
            next.clear();
        }
        frontier = std::move(next);
    }

    bool any_undecided = false;
    for (const auto& bv : cert.boxes)
        if (bv.verdict == Verdict::undecided) any_undecided = true;
    cert.status = refuted ? Status::refuted
                          : (any_undecided ? Status::undecided : Status::proven);
    std::sort(cert.boxes.begin(), cert.boxes.end(), canonical_less);
    return cert;
}

} // namespace

std::string to_string(FunctionId id) {
    switch (id) {
        case FunctionId::g: return "g";
        case FunctionId::h: return "h";
        case FunctionId::l0: return "l0";
        case FunctionId::l1: return "l1";
        case FunctionId::d_sigma: return "d_sigma";
        case FunctionId::d_sigma2: return "d_sigma2";
        case FunctionId::delta: return "delta";
    }
    return "?";
}

std::optional<FunctionId> function_id_from_string(const std::string& s) {
    if (s == "g") return FunctionId::g;
    if (s == "h") return FunctionId::h;
    if (s == "l0") return FunctionId::l0;
    if (s == "l1") return FunctionId::l1;
    if (s == "d_sigma") return FunctionId::d_sigma;
    if (s == "d_sigma2") return FunctionId::d_sigma2;
    if (s == "delta") return FunctionId::delta;
    return std::nullopt;
}

std::optional<Interval> enclose_function(FunctionId fn, const Box& box) {
    try {
        switch (fn) {
            case FunctionId::g: return g_enclose(box);
            case FunctionId::h: return h_enclose(box);
            case FunctionId::l0: return l0_enclose(box);
            case FunctionId::l1: return l1_enclose(box);
            case FunctionId::d_sigma: return d_sigma_enclose(box);
            case FunctionId::d_sigma2: return d_sigma2_enclose(box);
            case FunctionId::delta: return delta_refined(box);
        }
    } catch (const DomainError&) {
    } catch (const SingularityError&) {
    }
    return std::nullopt;
}

SignCertificate prove_sign(const SignClaim& claim, const VerifyConfig& cfg) {
    return run_bisection(claim, cfg, /*parallel=*/true);
}

SignCertificate prove_sign_serial(const SignClaim& claim, const VerifyConfig& cfg) {
    return run_bisection(claim, cfg, /*parallel=*/false);
}

bool replay_certificate(const SignCertificate& cert) {
    for (const auto& bv : cert.boxes) {
        // boxes frozen by an early refutation elsewhere were never
        // classified; everything else must reproduce bit for bit
        if (cert.status == Status::refuted && bv.verdict == Verdict::undecided)
            continue;
        Classified c = classify(cert.claim, bv.box);
        if (c.verdict != bv.verdict) return false;
        if (c.bound != bv.bound) return false;
    }
    return true;
}

std::vector<SignCertificate> verify_mas_part(int part, const Interval& p_range,
                                             double sigma_margin,
                                             const VerifyConfig& cfg) {
    if (!(p_range.lo > 1.0)) throw InvalidRegion("p must exceed 1");
    if (!(sigma_margin >= 0.0)) throw InvalidRegion("sigma_margin must be >= 0");

    const double sp_low = sigma_p(Interval(p_range.lo)).lo;
    const double extent = sp_low - 1.0;
    const double m = sigma_margin * extent;
    const double sig_lo = 1.0 + m;
    const double sig_hi = sp_low - m;
    if (!(sig_lo < sig_hi)) throw InvalidRegion("sigma_margin leaves empty range");

    std::vector<SignCertificate> out;
    auto claim_on = [&](FunctionId fn, Sign sign, const Interval& sigma) {
        SignClaim c{fn, sign, Box{p_range, sigma}, 0.0};
        out.push_back(prove_sign(c, cfg));
    };

    switch (part) {
        case 1: // Delta strictly increasing in sigma
            claim_on(FunctionId::g, Sign::positive, Interval{sig_lo, sig_hi});
            break;
        case 2: // strictly decreasing
            if (!(p_range.lo >= 2.0))
                throw InvalidRegion("part 2 requires p >= 2");
            claim_on(FunctionId::g, Sign::negative, Interval{sig_lo, sig_hi});
            break;
        case 3: // unique interior maximum via the surrogate h < 0
            if (!(p_range.lo > 2.0))
                throw InvalidRegion("part 3 requires p > 2");
            claim_on(FunctionId::h, Sign::negative, Interval{sig_lo, sig_hi});
            claim_on(FunctionId::g, Sign::positive,
                     Interval{sig_lo, std::min(1.0 + 2.0 * m, sig_hi)});
            claim_on(FunctionId::g, Sign::negative,
                     Interval{std::max(sp_low - 2.0 * m, sig_lo), sig_hi});
            break;
        case 4: { // constant at p = 2
            if (!(p_range.lo == 2.0 && p_range.hi == 2.0))
                throw InvalidRegion("part 4 requires the point p = 2");
            SignCertificate cert;
            cert.claim = SignClaim{FunctionId::delta, Sign::positive,
                                   Box{p_range, Interval{1.0, sp_low}}, 0.0};
            cert.config = cfg;
            constexpr int kSamples = 16;
            bool all_proven = true;
            std::vector<std::pair<Box, int>> work;
            for (int i = kSamples; i-- > 0;) {
                double lo = 1.0 + (sp_low - 1.0) * double(i) / kSamples;
                double hi = 1.0 + (sp_low - 1.0) * double(i + 1) / kSamples;
                work.push_back({Box{p_range, Interval{lo, hi}}, 0});
            }
            while (!work.empty()) {
                auto [b, depth] = work.back();
                work.pop_back();
                double bound = 0.0;
                Verdict v = classify_delta_const(b, bound);
                cert.evaluations += 1;
                cert.max_depth_used = std::max(cert.max_depth_used, depth);
                if (v == Verdict::undecided && depth < cfg.max_depth &&
                    width(b.sigma) > cfg.min_width) {
                    double mid = midpoint(b.sigma);
                    work.push_back({Box{b.p, Interval{mid, b.sigma.hi}}, depth + 1});
                    work.push_back({Box{b.p, Interval{b.sigma.lo, mid}}, depth + 1});
                    continue;
                }
                cert.boxes.push_back({b, v, bound, depth});
                if (v == Verdict::refuted) {
                    cert.refuting_box = cert.boxes.back();
                    cert.status = Status::refuted;
                }
                if (v != Verdict::proven) all_proven = false;
            }
            if (cert.status != Status::refuted)
                cert.status = all_proven ? Status::proven : Status::undecided;
            std::sort(cert.boxes.begin(), cert.boxes.end(), canonical_less);
            out.push_back(std::move(cert));
            break;
        }
        default:
            throw InvalidRegion("MAS part must be 1..4");
    }
    return out;
}

namespace {

SignEvidence slice_sign(RootSlice slice, double p) {
    SignEvidence ev;
    ev.p = p;
    try {
        Interval pi(p);
        ev.enclosure = slice == RootSlice::d_sigma2_at_sigma1
                           ? d_sigma2_at_sigma1(pi)
                           : d_sigma2_at_sigmap(pi);
        if (ev.enclosure.lo > 0.0)
            ev.sign = +1;
        else if (ev.enclosure.hi < 0.0)
            ev.sign = -1;
    } catch (const DomainError&) {
    } catch (const SingularityError&) {
    }
    return ev;
}

// Retry with small perturbations when an evaluation point lands on an
// undecidable enclosure.
SignEvidence slice_sign_refined(RootSlice slice, double p, double lo, double hi) {
    SignEvidence ev = slice_sign(slice, p);
    double step = (hi - lo) * 1e-3;
    for (int k = 1; ev.sign == 0 && k <= 4; ++k) {
        double cand = p + step * k;
        if (cand > lo && cand < hi) ev = slice_sign(slice, cand);
        if (ev.sign == 0) {
            cand = p - step * k;
            if (cand > lo && cand < hi) ev = slice_sign(slice, cand);
        }
    }
    return ev;
}

} // namespace

RootEnclosure enclose_root(RootSlice slice, const Interval& p_search, double tol) {
    if (!(p_search.lo > 2.0)) throw InvalidRegion("root search requires p > 2");
    if (!(tol > 0.0)) throw InvalidRegion("tol must be positive");

    RootEnclosure out;
    out.slice = slice;
    out.p_bracket = p_search;

    SignEvidence left = slice_sign(slice, p_search.lo);
    SignEvidence right = slice_sign(slice, p_search.hi);
    out.left = left;
    out.right = right;
    if (left.sign == 0 || right.sign == 0) {
        out.kind = RootEnclosure::Kind::undecided_endpoint;
        return out;
    }
    if (left.sign == right.sign) {
        out.kind = RootEnclosure::Kind::no_root_evidence;
        return out;
    }

    double lo = p_search.lo, hi = p_search.hi;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        SignEvidence ev = slice_sign_refined(slice, mid, lo, hi);
        if (ev.sign == 0) {
            out.kind = RootEnclosure::Kind::undecided_endpoint;
            out.p_bracket = Interval{lo, hi};
            return out;
        }
        if (ev.sign == left.sign) {
            lo = ev.p;
            left = ev;
        } else {
            hi = ev.p;
            right = ev;
        }
    }
    out.kind = RootEnclosure::Kind::bracket;
    out.p_bracket = Interval{lo, hi};
    out.left = left;
    out.right = right;
    return out;
}

} // namespace cohn
