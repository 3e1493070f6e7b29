#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace genpas {

using ItemId = std::uint32_t;

/** Runtime failure (bad data, impossible request). CLI maps it to exit code 1. */
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** Caller misuse (bad flag value, unknown name). CLI maps it to exit code 2. */
struct UsageError : Error {
    using Error::Error;
};

/** Fixed 17-significant-digit rendering used for every float that reaches a file. */
std::string format_double(double v);

/** FNV-1a 64-bit over a byte buffer; stable content digest for manifests. */
std::uint64_t fnv1a64(const void* data, std::size_t len);

std::string to_hex(std::uint64_t v);

}  // namespace genpas
