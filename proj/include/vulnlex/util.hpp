#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace vulnlex {

inline constexpr std::string_view kToolkitVersion = "0.1.0";

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// FNV-1a, used for config digests and embedding-file checksums.
// Stable across platforms; not cryptographic.
std::uint64_t fnv1a64(std::string_view bytes);
std::string to_hex(std::uint64_t v);

// Percent-encoding for lexemes in the embedding file format.
// Encodes '%' and ASCII whitespace; everything else passes through.
std::string percent_encode(std::string_view s);
std::string percent_decode(std::string_view s);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

// Checksum of a file's bytes as a hex string.
std::string file_checksum(const std::string& path);

}  // namespace vulnlex
