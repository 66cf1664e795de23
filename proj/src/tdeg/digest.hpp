#pragma once

#include <cstdint>
#include <string>

namespace tdeg {

// SHA-256 of a byte string, returned as lowercase hex.  Used to stamp
// reports with a digest of their exact input bytes so golden files detect
// fixture drift.
std::string sha256_hex(const std::string& bytes);

} // namespace tdeg
