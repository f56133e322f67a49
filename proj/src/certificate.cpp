#include "cohn/certificate.hpp"

#include <fstream>

#include <json.hpp>

namespace cohn {

namespace {

using nlohmann::ordered_json;

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::proven: return "proven";
        case Verdict::refuted: return "refuted";
        case Verdict::undecided: return "undecided";
    }
    return "?";
}

Verdict verdict_from(const std::string& s) {
    if (s == "proven") return Verdict::proven;
    if (s == "refuted") return Verdict::refuted;
    if (s == "undecided") return Verdict::undecided;
    throw DomainError("bad verdict: " + s);
}

const char* status_name(Status s) {
    switch (s) {
        case Status::proven: return "proven";
        case Status::refuted: return "refuted";
        case Status::undecided: return "undecided";
    }
    return "?";
}

ordered_json box_json(const Box& b) {
    return ordered_json{{"p", {b.p.lo, b.p.hi}}, {"sigma", {b.sigma.lo, b.sigma.hi}}};
}

Box box_from(const ordered_json& j) {
    return Box{Interval{j.at("p").at(0).get<double>(), j.at("p").at(1).get<double>()},
               Interval{j.at("sigma").at(0).get<double>(),
                        j.at("sigma").at(1).get<double>()}};
}

} // namespace

std::string certificate_to_json(const SignCertificate& cert) {
    ordered_json j;
    j["claim"] = ordered_json{
        {"function", to_string(cert.claim.fn)},
        {"sign", cert.claim.sign == Sign::positive ? "positive" : "negative"},
        {"region", box_json(cert.claim.region)},
        {"margin", cert.claim.margin},
    };
    j["status"] = status_name(cert.status);
    ordered_json boxes = ordered_json::array();
    for (const auto& bv : cert.boxes) {
        ordered_json e = box_json(bv.box);
        e["verdict"] = verdict_name(bv.verdict);
        e["bound"] = bv.bound;
        boxes.push_back(std::move(e));
    }
    j["boxes"] = std::move(boxes);
    j["meta"] = ordered_json{
        {"depth", cert.max_depth_used},
        {"evals", cert.evaluations},
        {"version", kCertificateVersion},
        {"clipped", cert.region_clipped},
        {"config",
         ordered_json{{"max_depth", cert.config.max_depth},
                      {"min_width", cert.config.min_width}}},
    };
    return j.dump(2);
}

SignCertificate certificate_from_json(const std::string& text) {
    ordered_json j = ordered_json::parse(text);
    SignCertificate cert;
    const auto& claim = j.at("claim");
    auto fn = function_id_from_string(claim.at("function").get<std::string>());
    if (!fn) throw DomainError("bad function id in certificate");
    cert.claim.fn = *fn;
    cert.claim.sign = claim.at("sign").get<std::string>() == "positive"
                          ? Sign::positive
                          : Sign::negative;
    cert.claim.region = box_from(claim.at("region"));
    cert.claim.margin = claim.at("margin").get<double>();

    const std::string st = j.at("status").get<std::string>();
    cert.status = st == "proven" ? Status::proven
                                 : (st == "refuted" ? Status::refuted : Status::undecided);

    for (const auto& e : j.at("boxes")) {
        BoxVerdict bv;
        bv.box = box_from(e);
        bv.verdict = verdict_from(e.at("verdict").get<std::string>());
        bv.bound = e.at("bound").get<double>();
        cert.boxes.push_back(bv);
        if (bv.verdict == Verdict::refuted) cert.refuting_box = bv;
    }
    const auto& meta = j.at("meta");
    cert.max_depth_used = meta.at("depth").get<int>();
    cert.evaluations = meta.at("evals").get<std::int64_t>();
    cert.region_clipped = meta.value("clipped", false);
    cert.config.max_depth = meta.at("config").at("max_depth").get<int>();
    cert.config.min_width = meta.at("config").at("min_width").get<double>();
    return cert;
}

void write_certificate(const SignCertificate& cert, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot open certificate file for writing: " + path);
    out << certificate_to_json(cert) << '\n';
}

SignCertificate read_certificate(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot open certificate file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return certificate_from_json(text);
}

} // namespace cohn
