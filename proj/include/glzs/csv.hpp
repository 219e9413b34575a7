#pragma once

#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace glzs {

// CSV emission: UTF-8, header row, '.' decimal, 9 significant digits, with
// '#'-prefixed provenance comments so every output can be reproduced from
// its own header.
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& os) : os_(os) {}

    void comment(const std::string& line) { os_ << "# " << line << "\n"; }

    void comments(const std::vector<std::pair<std::string, std::string>>& kv) {
        for (const auto& [k, v] : kv) os_ << "# " << k << "=" << v << "\n";
    }

    void header(std::initializer_list<const char*> cols) {
        bool first = true;
        for (const char* c : cols) {
            if (!first) os_ << ",";
            os_ << c;
            first = false;
        }
        os_ << "\n";
    }

    void begin_row() { first_in_row_ = true; }
    void end_row() { os_ << "\n"; }

    void field(double v) {
        char buf[48];
        std::snprintf(buf, sizeof buf, "%.9g", v);
        sep();
        os_ << buf;
    }
    void field(long v) { sep(); os_ << v; }
    void field(unsigned long long v) { sep(); os_ << v; }
    void field(const std::string& v) { sep(); os_ << v; }

    template <typename... Ts>
    void row(Ts... vals) {
        begin_row();
        (field(vals), ...);
        end_row();
    }

private:
    void sep() {
        if (!first_in_row_) os_ << ",";
        first_in_row_ = false;
    }
    std::ostream& os_;
    bool first_in_row_ = true;
};

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << content;
    if (!os) throw std::runtime_error("write failed: " + path);
}

} // namespace glzs
