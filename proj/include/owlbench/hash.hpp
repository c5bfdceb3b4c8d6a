#pragma once

#include <string>

namespace owlbench {

// Hex-encoded SHA-256 digest.
std::string sha256_hex(const std::string& data);

}  // namespace owlbench
