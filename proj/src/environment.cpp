#include "rwtc/environment.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "rwtc/errors.hpp"

namespace rwtc {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

BigInt parse_positive(const std::string& key, const std::string& text) {
    std::string t = trim(text);
    if (t.empty() || !std::all_of(t.begin(), t.end(), [](unsigned char c) {
            return std::isdigit(c);
        }))
        throw ParseError(key + ": \"" + text + "\" is not an unsigned decimal integer");
    BigInt v(t);
    if (v < 1) throw ParseError(key + " must be strictly positive");
    return v;
}

}  // namespace

Environment Environment::create(BigInt phys_cpu_cores, BigInt virt_cpu_cores, BigInt phys_mem_mb,
                                BigInt virt_mem_mb, BigInt hw_page_size, BigInt max_file_desc,
                                BigInt max_threads, std::vector<std::string> comp_codecs) {
    auto positive = [](const char* name, const BigInt& v) {
        if (v < 1) throw ValueError(std::string(name) + " must be strictly positive");
    };
    positive("phys_cpu_cores", phys_cpu_cores);
    positive("virt_cpu_cores", virt_cpu_cores);
    positive("phys_mem_mb", phys_mem_mb);
    positive("virt_mem_mb", virt_mem_mb);
    positive("hw_page_size", hw_page_size);
    positive("max_file_desc", max_file_desc);
    positive("max_threads", max_threads);
    if (comp_codecs.empty()) throw ValueError("comp_codecs must name at least one codec");
    for (std::size_t i = 0; i < comp_codecs.size(); ++i) {
        if (comp_codecs[i].empty()) throw ValueError("comp_codecs entries must be nonempty");
        for (std::size_t j = i + 1; j < comp_codecs.size(); ++j)
            if (comp_codecs[i] == comp_codecs[j])
                throw ValueError("duplicate codec \"" + comp_codecs[i] + "\"");
    }

    Environment env;
    env.phys_cpu_cores_ = std::move(phys_cpu_cores);
    env.virt_cpu_cores_ = std::move(virt_cpu_cores);
    env.phys_mem_mb_ = std::move(phys_mem_mb);
    env.virt_mem_mb_ = std::move(virt_mem_mb);
    env.hw_page_size_ = std::move(hw_page_size);
    env.max_file_desc_ = std::move(max_file_desc);
    env.max_threads_ = std::move(max_threads);
    env.comp_codecs_ = std::move(comp_codecs);
    return env;
}

const BigInt* Environment::numeric_field(const std::string& name) const {
    if (name == "phys_cpu_cores") return &phys_cpu_cores_;
    if (name == "virt_cpu_cores") return &virt_cpu_cores_;
    if (name == "phys_mem_mb") return &phys_mem_mb_;
    if (name == "virt_mem_mb") return &virt_mem_mb_;
    if (name == "hw_page_size") return &hw_page_size_;
    if (name == "max_file_desc") return &max_file_desc_;
    if (name == "max_threads") return &max_threads_;
    return nullptr;
}

std::string Environment::serialize() const {
    std::ostringstream out;
    out << "phys_cpu_cores=" << phys_cpu_cores_ << '\n'
        << "virt_cpu_cores=" << virt_cpu_cores_ << '\n'
        << "phys_mem_mb=" << phys_mem_mb_ << '\n'
        << "virt_mem_mb=" << virt_mem_mb_ << '\n'
        << "hw_page_size=" << hw_page_size_ << '\n'
        << "max_file_desc=" << max_file_desc_ << '\n'
        << "max_threads=" << max_threads_ << '\n'
        << "comp_codecs=";
    for (std::size_t i = 0; i < comp_codecs_.size(); ++i) {
        if (i) out << ',';
        out << comp_codecs_[i];
    }
    out << '\n';
    return out.str();
}

std::string Environment::fingerprint() const {
    std::uint64_t h = 1469598103934665603ull;
    for (char c : serialize()) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Environment parse_environment_text(const std::string& text, const std::string& origin) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ParseError(origin + ":" + std::to_string(lineno) + ": expected key=value");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        static const char* known[] = {"phys_cpu_cores", "virt_cpu_cores", "phys_mem_mb",
                                      "virt_mem_mb",    "hw_page_size",   "max_file_desc",
                                      "max_threads",    "comp_codecs"};
        if (std::find_if(std::begin(known), std::end(known),
                         [&](const char* k) { return key == k; }) == std::end(known))
            throw ParseError(origin + ":" + std::to_string(lineno) + ": unknown key \"" + key +
                             "\"");
        if (!kv.emplace(key, value).second)
            throw ParseError(origin + ":" + std::to_string(lineno) + ": duplicate key \"" + key +
                             "\"");
    }
    auto get = [&](const char* key) -> const std::string& {
        auto it = kv.find(key);
        if (it == kv.end()) throw ParseError(origin + ": missing key \"" + std::string(key) + "\"");
        return it->second;
    };

    std::vector<std::string> codecs;
    {
        std::istringstream cs(get("comp_codecs"));
        std::string item;
        while (std::getline(cs, item, ',')) {
            std::string c = trim(item);
            if (!c.empty()) codecs.push_back(c);
        }
    }
    try {
        return Environment::create(
            parse_positive("phys_cpu_cores", get("phys_cpu_cores")),
            parse_positive("virt_cpu_cores", get("virt_cpu_cores")),
            parse_positive("phys_mem_mb", get("phys_mem_mb")),
            parse_positive("virt_mem_mb", get("virt_mem_mb")),
            parse_positive("hw_page_size", get("hw_page_size")),
            parse_positive("max_file_desc", get("max_file_desc")),
            parse_positive("max_threads", get("max_threads")), std::move(codecs));
    } catch (const ValueError& e) {
        throw ParseError(origin + ": " + e.what());
    }
}

Environment load_environment_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open environment file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_environment_text(buf.str(), path.string());
}

const Environment& reference_environment() {
    static const Environment env = Environment::create(
        14, 28, 32768, 32768, 4096, 3000, 500,
        {"org.apache.hadoop.io.compress.DefaultCodec", "org.apache.hadoop.io.compress.GzipCodec",
         "org.apache.hadoop.io.compress.BZip2Codec", "org.apache.hadoop.io.compress.SnappyCodec",
         "org.apache.hadoop.io.compress.Lz4Codec"});
    return env;
}

}  // namespace rwtc
