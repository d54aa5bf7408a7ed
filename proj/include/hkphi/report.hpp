// SPDX-License-Identifier: MIT
// Pass/fail records shared by all verification suites.
#pragma once

#include <string>
#include <vector>

namespace hkphi {

struct CheckLine {
    std::string name;
    std::string params;
    bool pass = true;
    std::string witness;  // filled on failure
};

struct Report {
    std::string suite;
    std::vector<CheckLine> lines;

    void add(std::string name, std::string params, bool pass, std::string witness = {}) {
        lines.push_back({std::move(name), std::move(params), pass, pass ? std::string() : std::move(witness)});
    }
    void merge(const Report& o) { lines.insert(lines.end(), o.lines.begin(), o.lines.end()); }
    bool ok() const {
        for (const auto& l : lines)
            if (!l.pass) return false;
        return true;
    }
    int failures() const {
        int n = 0;
        for (const auto& l : lines) n += !l.pass;
        return n;
    }
    const CheckLine* first_failure() const {
        for (const auto& l : lines)
            if (!l.pass) return &l;
        return nullptr;
    }

    std::string to_text() const;
    std::string to_csv() const;
    std::string to_json() const;
};

}  // namespace hkphi
