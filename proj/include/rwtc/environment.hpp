#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "rwtc/values.hpp"

namespace rwtc {

// Platform parameters outside the configuration itself that field and
// cross-field constraints may reference. All numeric fields are strictly
// positive; codec class names are nonempty and unique.
class Environment {
public:
    static Environment create(BigInt phys_cpu_cores, BigInt virt_cpu_cores, BigInt phys_mem_mb,
                              BigInt virt_mem_mb, BigInt hw_page_size, BigInt max_file_desc,
                              BigInt max_threads, std::vector<std::string> comp_codecs);

    const BigInt& phys_cpu_cores() const { return phys_cpu_cores_; }
    const BigInt& virt_cpu_cores() const { return virt_cpu_cores_; }
    const BigInt& phys_mem_mb() const { return phys_mem_mb_; }
    const BigInt& virt_mem_mb() const { return virt_mem_mb_; }
    const BigInt& hw_page_size() const { return hw_page_size_; }
    const BigInt& max_file_desc() const { return max_file_desc_; }
    const BigInt& max_threads() const { return max_threads_; }
    const std::vector<std::string>& comp_codecs() const { return comp_codecs_; }

    // Numeric field by descriptor key ("phys_cpu_cores", ...); null if the
    // name is unknown or names the codec list.
    const BigInt* numeric_field(const std::string& name) const;

    // Canonical key=value text, one field per line, codecs comma-joined.
    std::string serialize() const;

    // FNV-1a hash of the canonical serialization, as 16 hex digits. Stamped
    // into check evidence so a certificate names the environment it was
    // produced under.
    std::string fingerprint() const;

    bool operator==(const Environment& other) const = default;

private:
    Environment() = default;

    BigInt phys_cpu_cores_;
    BigInt virt_cpu_cores_;
    BigInt phys_mem_mb_;
    BigInt virt_mem_mb_;
    BigInt hw_page_size_;
    BigInt max_file_desc_;
    BigInt max_threads_;
    std::vector<std::string> comp_codecs_;
};

// Parses the flat key=value descriptor format. Every key must appear exactly
// once; unknown keys are rejected. Lines starting with '#' are comments.
Environment parse_environment_text(const std::string& text, const std::string& origin = "<text>");

Environment load_environment_file(const std::filesystem::path& path);

// The reference platform the bundled schema's defaults are validated
// against: 14/28 cores, 32 GB, 4 KB pages, 3000 descriptors, 500 threads,
// the stock Hadoop codec classes.
const Environment& reference_environment();

}  // namespace rwtc
