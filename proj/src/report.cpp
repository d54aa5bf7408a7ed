// SPDX-License-Identifier: MIT

#include "hkphi/report.hpp"

#include <sstream>

#include "json.hpp"

namespace hkphi {

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string r = "\"";
    for (char c : s) {
        if (c == '"') r += '"';
        r += c;
    }
    return r + "\"";
}

}  // namespace

std::string Report::to_text() const {
    std::ostringstream os;
    for (const auto& l : lines) {
        os << (l.pass ? "PASS " : "FAIL ") << suite << " " << l.name;
        if (!l.params.empty()) os << " [" << l.params << "]";
        if (!l.pass && !l.witness.empty()) os << " witness: " << l.witness;
        os << "\n";
    }
    os << suite << ": " << (lines.size() - failures()) << "/" << lines.size() << " passed\n";
    return os.str();
}

std::string Report::to_csv() const {
    std::ostringstream os;
    os << "suite,name,params,pass,witness\n";
    for (const auto& l : lines)
        os << csv_field(suite) << "," << csv_field(l.name) << "," << csv_field(l.params) << ","
           << (l.pass ? "true" : "false") << "," << csv_field(l.witness) << "\n";
    return os.str();
}

std::string Report::to_json() const {
    nlohmann::ordered_json j;
    j["schema"] = "hkphi.report/1";
    j["suite"] = suite;
    j["pass"] = ok();
    auto arr = nlohmann::ordered_json::array();
    for (const auto& l : lines) {
        nlohmann::ordered_json e;
        e["name"] = l.name;
        e["params"] = l.params;
        e["pass"] = l.pass;
        if (!l.pass) e["witness"] = l.witness;
        arr.push_back(e);
    }
    j["checks"] = arr;
    return j.dump(2) + "\n";
}

}  // namespace hkphi
