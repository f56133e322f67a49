#pragma once

#include <string>

#include "cohn/verifier.hpp"

namespace cohn {

inline constexpr const char* kCertificateVersion = "1.0";

// Serialization is deterministic: fixed key order, shortest round-trip
// float formatting, no whitespace variance. Two identical certificates
// serialize to byte-identical strings.
std::string certificate_to_json(const SignCertificate& cert);
SignCertificate certificate_from_json(const std::string& text);

void write_certificate(const SignCertificate& cert, const std::string& path);
SignCertificate read_certificate(const std::string& path);

} // namespace cohn
