#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cohn/cohn.hpp"

namespace cohn {

enum class FunctionId { g, h, l0, l1, d_sigma, d_sigma2, delta };
enum class Sign { positive, negative };

std::string to_string(FunctionId id);
std::optional<FunctionId> function_id_from_string(const std::string& s);

struct SignClaim {
    FunctionId fn = FunctionId::g;
    Sign sign = Sign::positive;
    Box region;
    double margin = 0.0; // strict-sign slack; 0 suffices for strictness
};

enum class Verdict { proven, refuted, undecided };
enum class Status { proven, refuted, undecided };

struct BoxVerdict {
    Box box;
    Verdict verdict = Verdict::undecided;
    double bound = 0.0; // signed bound achieved (lo for positive claims)
    int depth = 0;
};

struct VerifyConfig {
    int max_depth = 40;
    double min_width = 1e-6; // relative to the region extent
    int workers = 1;         // OpenMP threads for the box frontier
};

struct SignCertificate {
    SignClaim claim;
    Status status = Status::undecided;
    std::vector<BoxVerdict> boxes; // canonical order: (p.lo, p.hi, s.lo, s.hi)
    std::optional<BoxVerdict> refuting_box;
    int max_depth_used = 0;
    std::int64_t evaluations = 0;
    bool region_clipped = false;
    VerifyConfig config; // workers excluded from serialization
};

// Interval enclosure of the claimed function on one box; DomainError and
// SingularityError surface as an unset optional (undecided box).
std::optional<Interval> enclose_function(FunctionId fn, const Box& box);

// Adaptive bisection sign proof (Malyshev covering). Splits the dimension
// with larger width relative to the region extent, sigma on ties. A region
// whose p range contains 2 is answered `undecided` outright: every
// derivative-sign function vanishes identically there.
SignCertificate prove_sign(const SignClaim& claim, const VerifyConfig& cfg = {});

// Serial reference implementation; must produce a certificate identical
// to prove_sign for any worker count.
SignCertificate prove_sign_serial(const SignClaim& claim,
                                  const VerifyConfig& cfg = {});

// Re-evaluate every recorded box; true iff all verdicts reproduce.
bool replay_certificate(const SignCertificate& cert);

// MAS part checking. sigma range: [1 + m E, sigma_p - m E] with
// E = sigma_p(p.lo) - 1 and m = sigma_margin; part 3 additionally checks
// g > 0 on a strip [1 + mE, 1 + 2mE] and g < 0 on [sigma_p - 2mE,
// sigma_p - mE]. Part 4 checks that delta on sampled sigma boxes encloses
// sqrt(3)/2.
std::vector<SignCertificate> verify_mas_part(int part, const Interval& p_range,
                                             double sigma_margin = 0.05,
                                             const VerifyConfig& cfg = {});

enum class RootSlice { d_sigma2_at_sigma1, d_sigma2_at_sigmap };

struct SignEvidence {
    double p = 0.0;
    Interval enclosure{0.0, 0.0};
    int sign = 0; // certified sign, 0 = undecided
};

struct RootEnclosure {
    enum class Kind { bracket, no_root_evidence, undecided_endpoint };
    Kind kind = Kind::no_root_evidence;
    RootSlice slice = RootSlice::d_sigma2_at_sigma1;
    Interval p_bracket{0.0, 0.0};
    SignEvidence left, right;
};

// Interval bisection on p with certified sign evaluations of Delta''_ss on
// the slice; bracket of width <= tol with opposite certified endpoint
// signs, or NoRootEvidence when both ends certify the same sign.
RootEnclosure enclose_root(RootSlice slice, const Interval& p_search, double tol);

} // namespace cohn
