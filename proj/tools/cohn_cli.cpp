// cohn: enclosures, sign verification, root brackets and oracle
// cross-checks for the critical determinant of |x|^p + |y|^p < 1.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cohn/certificate.hpp"
#include "cohn/cohn.hpp"
#include "cohn/derivatives.hpp"
#include "cohn/oracle.hpp"
#include "cohn/verifier.hpp"

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

struct RunConfig {
    int max_depth = 40;
    double min_width = 1e-6;
    double margin = 0.0;
    double fp_tol = 1e-14;
    double fd_step = 1e-6;
    int workers = 1;
    std::string out_path;      // empty = stdout
    std::string format = "json";
};

// $COHN_CONFIG (or --config) may point at a JSON file supplying defaults
// for the numeric knobs; flags still win.
void load_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw cohn::DomainError("cannot read config file: " + path);
    json j = json::parse(in);
    cfg.max_depth = j.value("max_depth", cfg.max_depth);
    cfg.min_width = j.value("min_width", cfg.min_width);
    cfg.margin = j.value("margin", cfg.margin);
    cfg.fp_tol = j.value("fp_tol", cfg.fp_tol);
    cfg.fd_step = j.value("fd_step", cfg.fd_step);
    cfg.workers = j.value("workers", cfg.workers);
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out_path.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(cfg.out_path);
    if (!out) throw cohn::DomainError("cannot write " + cfg.out_path);
    out << text << "\n";
}

// Shortest round-trip decimal, shared by JSON and CSV output so both
// carry identical numeric content.
std::string num(double v) { return json(v).dump(); }

using Row = std::pair<std::string, std::vector<std::pair<std::string, double>>>;

std::string rows_to_json(const std::vector<Row>& rows) {
    ordered_json arr = ordered_json::array();
    for (const auto& [name, fields] : rows) {
        ordered_json o;
        o["fn"] = name;
        for (const auto& [k, v] : fields) o[k] = v;
        arr.push_back(o);
    }
    return arr.dump(2);
}

std::string rows_to_csv(const std::vector<Row>& rows) {
    std::ostringstream out;
    out << "fn";
    if (!rows.empty())
        for (const auto& [k, v] : rows.front().second) out << "," << k;
    for (const auto& [name, fields] : rows) {
        out << "\n" << name;
        for (const auto& [k, v] : fields) out << "," << num(v);
    }
    return out.str();
}

void emit_rows(const RunConfig& cfg, const std::vector<Row>& rows) {
    emit(cfg, cfg.format == "csv" ? rows_to_csv(rows) : rows_to_json(rows));
}

Row enclosure_row(const std::string& name, const cohn::Interval& e) {
    return {name, {{"lo", e.lo}, {"hi", e.hi}, {"width", width(e)}}};
}

int run_eval(const RunConfig& cfg, const std::vector<double>& p,
             const std::vector<double>& sigma,
             const std::vector<std::string>& fns, bool clip) {
    using namespace cohn;
    Interval pi(p[0], p[1]);
    std::vector<Row> rows;
    std::optional<Box> box;
    auto need_box = [&]() -> const Box& {
        if (!box) box = make_box(pi, Interval(sigma[0], sigma[1]), clip);
        return *box;
    };
    for (const auto& fn : fns) {
        if (fn == "sigma_p") rows.push_back(enclosure_row(fn, sigma_p(pi)));
        else if (fn == "tau_p") rows.push_back(enclosure_row(fn, tau_p_enclose(pi).tau));
        else if (fn == "c") rows.push_back(enclosure_row(fn, minkowski_constant(pi)));
        else if (fn == "tau") rows.push_back(enclosure_row(fn, tau_enclose(need_box()).tau));
        else if (fn == "delta") rows.push_back(enclosure_row(fn, delta_refined(need_box())));
        else if (fn == "g") rows.push_back(enclosure_row(fn, g_enclose(need_box())));
        else if (fn == "h") rows.push_back(enclosure_row(fn, h_enclose(need_box())));
        else if (fn == "l0") rows.push_back(enclosure_row(fn, l0_enclose(need_box())));
        else if (fn == "l1") rows.push_back(enclosure_row(fn, l1_enclose(need_box())));
        else if (fn == "d_sigma") rows.push_back(enclosure_row(fn, d_sigma_enclose(need_box())));
        else if (fn == "d_sigma2") rows.push_back(enclosure_row(fn, d_sigma2_enclose(need_box())));
        else if (fn == "d_p" || fn == "d_sigma_p" || fn == "d_sigma2_p") {
            DerivativeSet ds = derivatives_enclose(need_box());
            Interval e = fn == "d_p" ? ds.d_p
                       : fn == "d_sigma_p" ? ds.d_sigma_p : ds.d_sigma2_p;
            rows.push_back(enclosure_row(fn, e));
        } else {
            throw cohn::DomainError("unknown function: " + fn);
        }
    }
    emit_rows(cfg, rows);
    return 0;
}

int status_exit(cohn::Status s) {
    switch (s) {
        case cohn::Status::proven: return 0;
        case cohn::Status::refuted: return 2;
        case cohn::Status::undecided: return 3;
    }
    return 1;
}

std::string certs_to_csv(const std::vector<cohn::SignCertificate>& certs) {
    std::ostringstream out;
    out << "claim_fn,claim_sign,status,p_lo,p_hi,sigma_lo,sigma_hi,verdict,bound,depth";
    for (const auto& c : certs) {
        std::string fn = to_string(c.claim.fn);
        std::string sign = c.claim.sign == cohn::Sign::positive ? "positive" : "negative";
        std::string status = c.status == cohn::Status::proven ? "proven"
                           : c.status == cohn::Status::refuted ? "refuted" : "undecided";
        for (const auto& bv : c.boxes) {
            std::string verdict = bv.verdict == cohn::Verdict::proven ? "proven"
                                : bv.verdict == cohn::Verdict::refuted ? "refuted"
                                                                       : "undecided";
            out << "\n" << fn << "," << sign << "," << status << ","
                << num(bv.box.p.lo) << "," << num(bv.box.p.hi) << ","
                << num(bv.box.sigma.lo) << "," << num(bv.box.sigma.hi) << ","
                << verdict << "," << num(bv.bound) << "," << bv.depth;
        }
    }
    return out.str();
}

int run_verify(const RunConfig& cfg, int part, const std::string& fn_name,
               const std::string& sign_name, const std::vector<double>& p,
               const std::vector<double>& sigma, double sigma_margin) {
    using namespace cohn;
    VerifyConfig vc;
    vc.max_depth = cfg.max_depth;
    vc.min_width = cfg.min_width;
    vc.workers = cfg.workers;

    std::vector<SignCertificate> certs;
    if (part != 0) {
        certs = verify_mas_part(part, Interval(p[0], p[1]), sigma_margin, vc);
    } else {
        auto fn = function_id_from_string(fn_name);
        if (!fn) throw DomainError("unknown function: " + fn_name);
        if (sign_name != "positive" && sign_name != "negative")
            throw DomainError("sign must be positive or negative");
        Sign sign = sign_name == "positive" ? Sign::positive : Sign::negative;
        Box region = make_box(Interval(p[0], p[1]), Interval(sigma[0], sigma[1]),
                              /*clip=*/true);
        certs.push_back(prove_sign(SignClaim{*fn, sign, region, cfg.margin}, vc));
    }

    if (cfg.format == "csv") {
        emit(cfg, certs_to_csv(certs));
    } else if (certs.size() == 1) {
        emit(cfg, certificate_to_json(certs[0]));
    } else {
        std::string joined = "[\n";
        for (size_t i = 0; i < certs.size(); ++i)
            joined += certificate_to_json(certs[i]) + (i + 1 < certs.size() ? ",\n" : "\n");
        joined += "]";
        emit(cfg, joined);
    }

    Status overall = Status::proven;
    for (const auto& c : certs) {
        if (c.status == Status::refuted) return 2;
        if (c.status != Status::proven) overall = Status::undecided;
    }
    return status_exit(overall);
}

int run_roots(const RunConfig& cfg, const std::string& fn_name,
              const std::vector<double>& p, double tol) {
    using namespace cohn;
    RootSlice slice;
    if (fn_name == "d_sigma2_at_sigma1") slice = RootSlice::d_sigma2_at_sigma1;
    else if (fn_name == "d_sigma2_at_sigmap") slice = RootSlice::d_sigma2_at_sigmap;
    else throw DomainError("unknown slice: " + fn_name);

    RootEnclosure r = enclose_root(slice, Interval(p[0], p[1]), tol);
    const char* kind = r.kind == RootEnclosure::Kind::bracket ? "bracket"
                     : r.kind == RootEnclosure::Kind::no_root_evidence
                           ? "no_root_evidence" : "undecided_endpoint";
    if (cfg.format == "csv") {
        std::ostringstream out;
        out << "slice,kind,p_lo,p_hi,left_sign,right_sign\n"
            << fn_name << "," << kind << "," << num(r.p_bracket.lo) << ","
            << num(r.p_bracket.hi) << "," << r.left.sign << "," << r.right.sign;
        emit(cfg, out.str());
    } else {
        ordered_json j;
        j["slice"] = fn_name;
        j["kind"] = kind;
        j["p"] = {r.p_bracket.lo, r.p_bracket.hi};
        auto ev = [](const SignEvidence& e) {
            return ordered_json{{"p", e.p},
                                {"enclosure", {e.enclosure.lo, e.enclosure.hi}},
                                {"sign", e.sign}};
        };
        j["left"] = ev(r.left);
        j["right"] = ev(r.right);
        emit(cfg, j.dump(2));
    }
    return r.kind == RootEnclosure::Kind::undecided_endpoint ? 3 : 0;
}

int run_oracle(const RunConfig& cfg, const std::string& task, double p,
               double sigma) {
    namespace orc = cohn::oracle;
    orc::OracleConfig oc;
    oc.fp_tol = cfg.fp_tol;
    oc.fd_step = cfg.fd_step;
    std::vector<Row> rows;
    if (task == "parallelogram") {
        rows.push_back({task, {{"p", p}, {"value", orc::min_parallelogram_area(p, oc)}}});
    } else if (task == "tau") {
        rows.push_back({task, {{"p", p}, {"sigma", sigma}, {"value", orc::tau_point(p, sigma, oc)}}});
    } else if (task == "delta") {
        rows.push_back({task, {{"p", p}, {"sigma", sigma}, {"value", orc::delta_point(p, sigma, oc)}}});
    } else if (task == "d_sigma" || task == "d_sigma2") {
        orc::DerivId id = task == "d_sigma" ? orc::DerivId::d_sigma : orc::DerivId::d_sigma2;
        rows.push_back({task, {{"p", p}, {"sigma", sigma}, {"value", orc::fd_derivative(id, p, sigma, oc)}}});
    } else {
        throw cohn::DomainError("unknown oracle task: " + task);
    }
    emit_rows(cfg, rows);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"verified enclosures for Cohn's critical determinant"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;
    if (const char* env = std::getenv("COHN_CONFIG")) config_path = env;
    app.add_option("--config", config_path, "JSON file with default parameters");

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", cfg.out_path, "output file (default stdout)");
        sub->add_option("--format", cfg.format, "json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--max-depth", cfg.max_depth);
        sub->add_option("--min-width", cfg.min_width);
        sub->add_option("--margin", cfg.margin);
        sub->add_option("--fp-tol", cfg.fp_tol);
        sub->add_option("--fd-step", cfg.fd_step);
        sub->add_option("--workers", cfg.workers);
    };

    std::vector<double> p{2.0, 2.0}, sigma{1.0, 1.0};
    std::vector<std::string> fns{"delta"};
    bool clip = false;
    CLI::App* eval = app.add_subcommand("eval", "interval enclosures on a box");
    eval->add_option("--p", p, "p range (lo hi)")->expected(2);
    eval->add_option("--sigma", sigma, "sigma range (lo hi)")->expected(2);
    eval->add_option("--fn", fns, "functions to evaluate");
    eval->add_flag("--clip", clip, "clip sigma range at the sigma_p curve");
    add_common(eval);

    int part = 0;
    std::string fn_name = "g", sign_name = "positive";
    double sigma_margin = 0.05;
    CLI::App* verify = app.add_subcommand("verify", "sign verification certificates");
    verify->add_option("--part", part, "MAS part 1-4")->check(CLI::Range(1, 4));
    verify->add_option("--fn", fn_name, "claim function (raw claim mode)");
    verify->add_option("--sign", sign_name, "positive or negative");
    verify->add_option("--p", p, "p range (lo hi)")->expected(2);
    verify->add_option("--sigma", sigma, "sigma range (lo hi)")->expected(2);
    verify->add_option("--sigma-margin", sigma_margin, "relative margin for MAS parts");
    add_common(verify);

    std::string slice_name = "d_sigma2_at_sigma1";
    double tol = 1e-3;
    CLI::App* roots = app.add_subcommand("roots", "bracket p^(1) / p^(2)");
    roots->add_option("--fn", slice_name, "slice function");
    roots->add_option("--p", p, "search range (lo hi)")->expected(2);
    roots->add_option("--tol", tol, "bracket width target");
    add_common(roots);

    std::string task = "parallelogram";
    double op = 2.0, osigma = 1.2;
    CLI::App* orc = app.add_subcommand("oracle", "floating-point cross-checks");
    orc->add_option("task", task, "parallelogram | tau | delta | d_sigma | d_sigma2");
    orc->add_option("--p", op, "p value");
    orc->add_option("--sigma", osigma, "sigma value");
    add_common(orc);

    try {
        app.parse(argc, argv);
        if (!config_path.empty()) {
            RunConfig defaults;
            load_config_file(defaults, config_path);
            // flags already parsed override file values only where given
            auto keep = [&](auto& field, const auto& flag_default, const auto& file_val) {
                if (field == flag_default) field = file_val;
            };
            keep(cfg.max_depth, RunConfig{}.max_depth, defaults.max_depth);
            keep(cfg.min_width, RunConfig{}.min_width, defaults.min_width);
            keep(cfg.margin, RunConfig{}.margin, defaults.margin);
            keep(cfg.fp_tol, RunConfig{}.fp_tol, defaults.fp_tol);
            keep(cfg.fd_step, RunConfig{}.fd_step, defaults.fd_step);
            keep(cfg.workers, RunConfig{}.workers, defaults.workers);
        }
        if (eval->parsed()) return run_eval(cfg, p, sigma, fns, clip);
        if (verify->parsed())
            return run_verify(cfg, part, fn_name, sign_name, p, sigma, sigma_margin);
        if (roots->parsed()) return run_roots(cfg, slice_name, p, tol);
        if (orc->parsed()) return run_oracle(cfg, task, op, osigma);
        return 1;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
}
