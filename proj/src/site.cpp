#include "rwtc/site.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "rwtc/detail/text.hpp"
#include "rwtc/errors.hpp"

namespace rwtc {

using detail::trim;

namespace {

bool name_char(unsigned char c) {
    return std::isalnum(c) || c == '-' || c == '_' || c == ':' || c == '.';
}

// Just enough XML to read the site-file shape: tags with ignored
// attributes, text with the five named entities, comments, and processing
// instructions. No doctypes, CDATA, or namespaces.
class XmlScanner {
public:
    XmlScanner(const std::string& text, std::string origin)
        : s_(text), origin_(std::move(origin)) {
        // A UTF-8 byte-order mark is tolerated.
        if (s_.size() >= 3 && s_.compare(0, 3, "\xEF\xBB\xBF") == 0) i_ = 3;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(origin_ + ": " + msg + " (at offset " + std::to_string(i_) + ")");
    }

    // Skips whitespace, comments, and <?...?> sections.
    void skip_misc() {
        while (i_ < s_.size()) {
            if (std::isspace(static_cast<unsigned char>(s_[i_]))) {
                ++i_;
            } else if (s_.compare(i_, 4, "<!--") == 0) {
                std::size_t end = s_.find("-->", i_ + 4);
                if (end == std::string::npos) fail("unterminated comment");
                i_ = end + 3;
            } else if (s_.compare(i_, 2, "<?") == 0) {
                std::size_t end = s_.find("?>", i_ + 2);
                if (end == std::string::npos) fail("unterminated processing instruction");
                i_ = end + 2;
            } else {
                return;
            }
        }
    }

    // Discards character data, comments, and processing instructions,
    // stopping at the next element tag or end of input.
    void skip_to_element() {
        while (i_ < s_.size()) {
            if (s_[i_] != '<') {
                ++i_;
            } else if (s_.compare(i_, 4, "<!--") == 0) {
                std::size_t end = s_.find("-->", i_ + 4);
                if (end == std::string::npos) fail("unterminated comment");
                i_ = end + 3;
            } else if (s_.compare(i_, 2, "<?") == 0) {
                std::size_t end = s_.find("?>", i_ + 2);
                if (end == std::string::npos) fail("unterminated processing instruction");
                i_ = end + 2;
            } else {
                return;
            }
        }
    }

    bool end_of_input() const { return i_ >= s_.size(); }

    bool eof() {
        skip_misc();
        return i_ >= s_.size();
    }

    bool at_close_tag() const { return s_.compare(i_, 2, "</") == 0; }

    struct Tag {
        std::string name;
        bool self_closing = false;
    };

    Tag read_open_tag() {
        if (i_ >= s_.size() || s_[i_] != '<') fail("expected a tag");
        if (s_.compare(i_, 2, "<!") == 0) fail("unsupported markup");
        ++i_;
        Tag tag;
        while (i_ < s_.size() && name_char(static_cast<unsigned char>(s_[i_])))
            tag.name.push_back(s_[i_++]);
        if (tag.name.empty()) fail("missing tag name");
        // Attributes are scanned over and ignored; quotes may hide '>'.
        while (true) {
            if (i_ >= s_.size()) fail("unterminated tag <" + tag.name);
            char c = s_[i_];
            if (c == '>') {
                ++i_;
                return tag;
            }
            if (c == '/' && i_ + 1 < s_.size() && s_[i_ + 1] == '>') {
                i_ += 2;
                tag.self_closing = true;
                return tag;
            }
            if (c == '"' || c == '\'') {
                std::size_t end = s_.find(c, i_ + 1);
                if (end == std::string::npos) fail("unterminated attribute value");
                i_ = end + 1;
            } else {
                ++i_;
            }
        }
    }

    std::string read_close_tag() {
        if (!at_close_tag()) fail("expected a closing tag");
        i_ += 2;
        std::string name;
        while (i_ < s_.size() && name_char(static_cast<unsigned char>(s_[i_])))
            name.push_back(s_[i_++]);
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (i_ >= s_.size() || s_[i_] != '>') fail("malformed closing tag </" + name);
        ++i_;
        return name;
    }

    // Reads decoded character data up to the next markup.
    std::string read_text() {
        std::string out;
        while (i_ < s_.size() && s_[i_] != '<') {
            char c = s_[i_];
            if (c == '&') {
                std::size_t end = s_.find(';', i_ + 1);
                if (end == std::string::npos || end - i_ > 6) fail("malformed entity");
                std::string ent = s_.substr(i_ + 1, end - i_ - 1);
                if (ent == "amp")
                    out.push_back('&');
                else if (ent == "lt")
                    out.push_back('<');
                else if (ent == "gt")
                    out.push_back('>');
                else if (ent == "quot")
                    out.push_back('"');
                else if (ent == "apos")
                    out.push_back('\'');
                else
                    fail("unknown entity &" + ent + ";");
                i_ = end + 1;
            } else {
                out.push_back(c);
                ++i_;
            }
        }
        return out;
    }

    // Consumes everything up to and including the close of an element whose
    // open tag was just read (used for ignored elements).
    void skip_element(const std::string& name) {
        int depth = 1;
        while (depth > 0) {
            skip_to_element();
            if (i_ >= s_.size()) fail("unterminated <" + name + "> element");
            if (at_close_tag()) {
                read_close_tag();
                --depth;
            } else {
                Tag t = read_open_tag();
                if (!t.self_closing) ++depth;
            }
        }
    }

private:
    const std::string& s_;
    std::string origin_;
    std::size_t i_ = 0;
};

// Reads the full text content of a simple element (<name>, <value>,
// <final>) whose open tag was just consumed.
std::string read_simple_content(XmlScanner& x, const XmlScanner::Tag& tag) {
    if (tag.self_closing) return "";
    std::string content = x.read_text();
    if (!x.at_close_tag()) x.fail("markup inside <" + tag.name + "> is not supported");
    std::string close = x.read_close_tag();
    if (close != tag.name) x.fail("mismatched </" + close + "> inside <" + tag.name + ">");
    return trim(content);
}

SiteEntry parse_property(XmlScanner& x, const std::string& origin) {
    SiteEntry entry;
    bool have_name = false, have_value = false;
    while (true) {
        x.skip_to_element();
        if (x.end_of_input()) x.fail("unterminated <property>");
        if (x.at_close_tag()) {
            std::string close = x.read_close_tag();
            if (close != "property") x.fail("mismatched </" + close + "> inside <property>");
            break;
        }
        XmlScanner::Tag tag = x.read_open_tag();
        if (tag.name == "name") {
            if (have_name) x.fail("duplicate <name> in one property");
            entry.name = read_simple_content(x, tag);
            have_name = true;
        } else if (tag.name == "value") {
            if (have_value) x.fail("duplicate <value> in one property");
            entry.value = read_simple_content(x, tag);
            have_value = true;
        } else if (tag.name == "final") {
            std::string text = read_simple_content(x, tag);
            if (text == "true")
                entry.final_flag = true;
            else if (text == "false")
                entry.final_flag = false;
            else
                x.fail("<final> must be true or false, got \"" + text + "\"");
        } else if (!tag.self_closing) {
            x.skip_element(tag.name);
        }
    }
    if (!have_name) throw ParseError(origin + ": property without <name>");
    if (!have_value)
        throw ParseError(origin + ": property \"" + entry.name + "\" without <value>");
    if (entry.name.empty()) throw ParseError(origin + ": property with empty name");
    return entry;
}

}  // namespace

SiteFile parse_site_text(const std::string& text, const std::string& origin) {
    XmlScanner x(text, origin);
    x.skip_misc();
    XmlScanner::Tag root = x.read_open_tag();
    if (root.name != "configuration")
        x.fail("expected <configuration> root, got <" + root.name + ">");

    SiteFile file;
    file.path = origin;
    if (root.self_closing) return file;

    while (true) {
        x.skip_to_element();
        if (x.end_of_input()) x.fail("unterminated <configuration>");
        if (x.at_close_tag()) {
            std::string close = x.read_close_tag();
            if (close != "configuration") x.fail("mismatched </" + close + ">");
            break;
        }
        XmlScanner::Tag tag = x.read_open_tag();
        if (tag.name == "property") {
            if (tag.self_closing) x.fail("empty <property/>");
            SiteEntry entry = parse_property(x, origin);
            for (const auto& prev : file.entries)
                if (prev.name == entry.name)
                    throw ParseError(origin + ": duplicate property \"" + entry.name + "\"");
            file.entries.push_back(std::move(entry));
        } else if (!tag.self_closing) {
            x.skip_element(tag.name);
        }
    }
    if (!x.eof()) x.fail("trailing content after </configuration>");
    return file;
}

SiteFile parse_site_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open site file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_site_text(buf.str(), path.string());
}

std::pair<RawConfig, std::vector<Diagnostic>> merge_configs(const std::vector<SiteFile>& files) {
    RawConfig out;
    std::vector<Diagnostic> diags;
    for (const auto& file : files) {
        for (std::size_t i = 0; i < file.entries.size(); ++i) {
            const SiteEntry& e = file.entries[i];
            const RawEntry* existing = out.find(e.name);
            if (existing && existing->final_flag) {
                diags.push_back(make_diagnostic(
                    DiagnosticKind::FinalOverride, e.name,
                    "value \"" + e.value + "\" from " + file.path + " ignored: \"" +
                        existing->raw_value + "\" from " + existing->source.path + " is final"));
                continue;
            }
            out.set(RawEntry{e.name, e.value, e.final_flag, SourceRef{file.path, i}});
        }
    }
    return {std::move(out), std::move(diags)};
}

namespace {

std::string escape_xml(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

}  // namespace

std::string serialize_config(const RawConfig& config) {
    if (config.empty()) return "<configuration></configuration>\n";

    std::vector<const RawEntry*> sorted;
    sorted.reserve(config.size());
    for (const auto& e : config.entries()) sorted.push_back(&e);
    std::sort(sorted.begin(), sorted.end(),
              [](const RawEntry* a, const RawEntry* b) { return a->name < b->name; });

    std::ostringstream out;
    out << "<configuration>\n";
    for (const RawEntry* e : sorted) {
        out << "  <property>\n";
        out << "    <name>" << escape_xml(e->name) << "</name>\n";
        out << "    <value>" << escape_xml(e->raw_value) << "</value>\n";
        if (e->final_flag) out << "    <final>true</final>\n";
        out << "  </property>\n";
    }
    out << "</configuration>\n";
    return out.str();
}

}  // namespace rwtc
