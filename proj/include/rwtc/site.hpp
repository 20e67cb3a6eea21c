#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "rwtc/config.hpp"

namespace rwtc {

// One machine-level assignment as read from a site file.
struct SiteEntry {
    std::string name;
    std::string value;
    bool final_flag = false;

    bool operator==(const SiteEntry&) const = default;
};

// A parsed site file: entries in document order, names unique within the
// file (a duplicate is a parse error, unlike cross-file overrides).
struct SiteFile {
    std::string path;
    std::vector<SiteEntry> entries;

    bool operator==(const SiteFile&) const = default;
};

// Parses the Hadoop site-file shape: a <configuration> root holding
// <property> elements with <name>, <value>, and an optional
// <final>true|false</final>. Whitespace around text is trimmed, attributes
// and unknown elements are ignored, comments and an XML declaration are
// accepted, and the five standard character entities are decoded. Throws
// ParseError / IoError.
SiteFile parse_site_text(const std::string& text, const std::string& origin = "<text>");
SiteFile parse_site_file(const std::filesystem::path& path);

// Layers files left to right: a later value overrides an earlier one unless
// the earlier occurrence was final, in which case the earlier value is kept
// and a FinalOverride warning is emitted. The surviving entry's position is
// its first occurrence; its source points at the occurrence that supplied
// the value.
std::pair<RawConfig, std::vector<Diagnostic>> merge_configs(const std::vector<SiteFile>& files);

// Renders the site-file shape back out: entries sorted by name, <final>
// emitted only when true, an empty configuration as
// <configuration></configuration>. parse_site_text(serialize_config(c))
// reproduces c's entries modulo source references.
std::string serialize_config(const RawConfig& config);

}  // namespace rwtc
