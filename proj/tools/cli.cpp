// Licensed under the Apache License, Version 2.0.
// See http://www.apache.org/licenses/LICENSE-2.0 for details.
//
// hkphi: tables, verification suites and filtration reports.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "hkphi/embedding.hpp"
#include "hkphi/galois.hpp"
#include "hkphi/halftree.hpp"
#include "hkphi/sl2.hpp"
#include "json.hpp"

using namespace hkphi;
using json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    int p = 3, q = 0, d = 1;
    std::string rc;  // A, B or empty for both (checks) / A (table, filtration)
    std::optional<int> b;  // discrete log
    int depth = 0;
    std::string format = "text", out;
    unsigned seed = 1;
    std::string suite, theta, sigma = "1", eps;
};

int field_degree(const RunConfig& c) {
    if (c.p < 3) throw UsageError("--p must be an odd prime");
    for (int f = 2; f * f <= c.p; ++f)
        if (c.p % f == 0) throw UsageError("--p must be prime");
    if (c.q == 0) return 1;
    long long x = c.p;
    for (int deg = 1; deg <= 12; ++deg, x *= c.p)
        if (x == c.q) return deg;
    throw UsageError("--q must be a power of --p");
}

std::vector<RealCase> cases(const RunConfig& c, bool both_by_default) {
    if (c.rc == "A") return {RealCase::A};
    if (c.rc == "B") return {RealCase::B};
    if (!c.rc.empty()) throw UsageError("--case must be A or B");
    if (both_by_default) return {RealCase::A, RealCase::B};
    return {RealCase::A};
}

std::vector<Elt> b_values(const Field& F, const RunConfig& c) {
    if (c.b) {
        if (*c.b < 0 || *c.b >= F.q() - 1) throw UsageError("--b is a discrete log in [0, q-2]");
        return {F.exp(*c.b)};
    }
    std::vector<Elt> out;
    for (int k = 0; k < F.q() - 1; ++k) out.push_back(F.exp(k));
    return out;
}

void emit(const RunConfig& c, const std::string& text) {
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw UsageError("cannot write " + c.out);
    f << text;
}

std::string render(const RunConfig& c, const Report& r) {
    if (c.format == "json") return r.to_json();
    if (c.format == "csv") return r.to_csv();
    return r.to_text();
}

template <class T>
std::string join(const std::vector<T>& v, const char* sep) {
    std::ostringstream os;
    for (size_t i = 0; i < v.size(); ++i) os << (i ? sep : "") << v[i];
    return os.str();
}

std::vector<std::string> elts(const Field& F, const std::vector<Elt>& v) {
    std::vector<std::string> out;
    for (Elt x : v) out.push_back(F.str(x));
    return out;
}

void warn_depth(int depth, int threshold, const char* what) {
    if (depth < threshold)
        std::cerr << "warning: --depth " << depth << " is below " << threshold << ", the depth at which the " << what
                  << " identities become visible\n";
}

// ---------------------------------------------------------------------------

int cmd_table(const RunConfig& c) {
    Field F(c.p, field_degree(c));
    RealCase rc = cases(c, false).front();
    json rows = json::array();
    bool ok = true;
    std::ostringstream csv, text;
    csv << "lambda,J,b,k,w,delta,h,s,beta_power,primitive,level,E,nf_beta_power\n";
    long long domain = 0, image = 0, target = 0;
    for (Elt b : b_values(F, c)) {
        auto res = bijection_check(F, c.d, b, rc);
        ok &= res.report.ok();
        domain += res.domain;
        image += res.image;
        target = res.target;
        for (const auto& row : res.rows) {
            json r;
            r["lambda"] = row.mod.lambda;
            r["J"] = subset_str(c.d, row.mod.J);
            r["b"] = F.str(b);
            r["k"] = row.inv.k;
            r["w"] = row.inv.w;
            r["delta"] = F.str(row.inv.delta);
            r["h"] = row.param.h;
            r["s"] = row.param.s;
            r["beta_power"] = F.str(row.param.beta_power);
            r["primitive"] = row.primitive;
            r["normal_form"] = {{"level", row.nf.level}, {"E", row.nf.E}, {"beta_power", F.str(row.nf.beta_power)}};
            rows.push_back(r);
            csv << join(row.mod.lambda, ";") << "," << subset_str(c.d, row.mod.J) << "," << F.str(b) << ","
                << join(row.inv.k, ";") << "," << join(row.inv.w, ";") << "," << F.str(row.inv.delta) << ","
                << row.param.h << "," << row.param.s << "," << F.str(row.param.beta_power) << ","
                << (row.primitive ? "true" : "false") << "," << row.nf.level << "," << join(row.nf.E, ";") << ","
                << F.str(row.nf.beta_power) << "\n";
            text << "lambda=(" << join(row.mod.lambda, ",") << ") J=" << subset_str(c.d, row.mod.J)
                 << " b=" << F.str(b) << " k=(" << join(row.inv.k, ",") << ") w=(" << join(row.inv.w, ",")
                 << ") delta=" << F.str(row.inv.delta) << " -> " << row.param.str(F)
                 << (row.primitive ? "" : " [not primitive]") << " NF: " << row.nf.str(F) << "\n";
        }
        if (!res.report.ok()) std::cerr << res.report.to_text();
    }
    std::string outtext;
    if (c.format == "json") {
        json j;
        j["schema"] = "hkphi.table/1";
        j["p"] = c.p;
        j["q"] = F.q();
        j["d"] = c.d;
        j["case"] = case_name(rc);
        j["rows"] = rows;
        j["summary"] = {{"domain", domain}, {"image", image}, {"target_per_b", target}, {"pass", ok}};
        outtext = j.dump(2) + "\n";
    } else if (c.format == "csv") {
        outtext = csv.str();
    } else {
        text << rows.size() << " rows, bijection " << (ok ? "pass" : "FAIL") << "\n";
        outtext = text.str();
    }
    emit(c, outtext);
    return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------

Report suite_sl2(const RunConfig& c) {
    Report r{"sl2", {}};
    for (Variant v : {Variant::SL, Variant::PSL}) {
        r.merge(check_link_identities(c.p, v));
        r.merge(check_flatness_sequences(c.p, v));
        r.merge(check_tensor_exactness(c.p, v, c.seed));
    }
    return r;
}

Report suite_embedding(const RunConfig& c) {
    Report r{"embedding", {}};
    int m_max = c.depth > 0 ? c.depth : static_cast<int>(ipow(c.p, 4));
    for (RealCase rc : cases(c, true)) r.merge(verify_embedding(c.p, c.d, rc, m_max));
    return r;
}

Report suite_homology(const RunConfig& c) {
    Report r{"homology", {}};
    Field F(c.p, field_degree(c));
    int N = c.depth > 0 ? c.depth : 2 * (c.d + 2);
    warn_depth(N, 2 * (c.d + 2), "half-tree");
    std::mt19937 rng(c.seed);
    for (RealCase rc : cases(c, true))
        for (Elt b : b_values(F, c)) {
            auto mods = enumerate_supersingular(F, c.d, b, rc);
            if (mods.size() > 20) {
                std::shuffle(mods.begin(), mods.end(), rng);
                mods.resize(20);
            }
            for (const auto& M : mods) r.merge(crosscheck_monomial_relations(F, M, N));
        }
    return r;
}

Report suite_bijection(const RunConfig& c) {
    Report r{"bijection", {}};
    Field F(c.p, field_degree(c));
    for (RealCase rc : cases(c, true))
        for (Elt b : b_values(F, c)) r.merge(bijection_check(F, c.d, b, rc).report);
    return r;
}

Report suite_filtration(const RunConfig& c) {
    Report r{"filtration", {}};
    const int d = c.d;
    std::vector<SigmaMap> maps;
    std::string pr = "d=" + std::to_string(d);
    if (d <= 2) {
        maps = all_sigma_maps(d);
    } else {
        std::mt19937 rng(c.seed);
        SigmaMap dom(d);
        for (int i = 0; i < 400; ++i) {
            SigmaMap s(d);
            for (const auto& [w, _] : dom.table()) s.set(w, static_cast<int>(rng() % 3) - 1);
            maps.push_back(s);
        }
        pr += " sampled=400";
    }
    std::string wit;
    for (const auto& s : maps) {
        std::string e = verify_admissible(admissible_filtration(s), s);
        if (!e.empty() && wit.empty()) wit = s.str() + ": " + e;
    }
    r.add("admissible", pr + " maps=" + std::to_string(maps.size()), wit.empty(), wit);
    r.add("sigma_one_closed_form", pr,
          same_filtration(admissible_filtration(SigmaMap(d, 1)), sigma_one_filtration(d)));
    if (d == 2) {
        auto cyc = [](const SigmaMap& s) {
            std::vector<size_t> out;
            for (const auto& L : admissible_filtration(s).levels)
                for (const auto& o : L.orbits) out.push_back(o.size());
            return out;
        };
        r.add("example_cycles_2_4", pr, cyc(example_sigma_24()) == std::vector<size_t>{2, 4});
        r.add("example_cycles_4_2", pr, cyc(example_sigma_42()) == std::vector<size_t>{4, 2});
    }
    // Cyclic pieces of sigma = 1 against the half tree.
    Field F(c.p, field_degree(c));
    int N = c.depth > 0 ? c.depth : 3;
    warn_depth(N, 3, "cyclic-piece");
    if (d <= 2)
        for (RealCase rc : cases(c, true)) {
            TorusChar theta = generic_theta(c.p, d, rc);
            SigmaMap s(d, 1);
            auto M = reduced_standard_make(F, rc, theta, s, std::vector<Elt>(weyl_elements(d).size(), 1));
            auto filt = admissible_filtration(s);
            r.merge(validate_cyclics_h0(F, M, filt, filtration_to_cyclics(F, M, filt), N));
        }
    return r;
}

int cmd_check(const RunConfig& c) {
    Report r;
    if (c.suite == "sl2") r = suite_sl2(c);
    else if (c.suite == "embedding") r = suite_embedding(c);
    else if (c.suite == "homology") r = suite_homology(c);
    else if (c.suite == "bijection") r = suite_bijection(c);
    else if (c.suite == "filtration") r = suite_filtration(c);
    else throw UsageError("unknown suite " + c.suite);
    emit(c, render(c, r));
    if (const CheckLine* f = r.first_failure())
        std::cerr << "first failure: " << f->name << " [" << f->params << "] " << f->witness << "\n";
    return r.ok() ? 0 : 1;
}

// ---------------------------------------------------------------------------

// Lines "word value"; '#' starts a comment.
std::vector<std::pair<Perm, long long>> read_word_table(const std::string& path, int d) {
    std::ifstream f(path);
    if (!f) throw UsageError("cannot read " + path);
    std::vector<std::pair<Perm, long long>> out;
    std::string line;
    while (std::getline(f, line)) {
        line = line.substr(0, line.find('#'));
        std::istringstream is(line);
        std::string w;
        long long v;
        if (!(is >> w)) continue;
        if (!(is >> v)) throw UsageError("bad line in " + path + ": " + line);
        try {
            out.emplace_back(parse_perm_word(w, d), v);
        } catch (const std::exception& e) {
            throw UsageError("bad word " + w + " in " + path);
        }
    }
    return out;
}

SigmaMap read_sigma(const RunConfig& c) {
    const std::string& s = c.sigma;
    if (s == "1" || s == "0" || s == "-1") return SigmaMap(c.d, std::stoi(s));
    if (s == "ex24" || s == "ex42") {
        if (c.d != 2) throw UsageError("--sigma " + s + " needs --d 2");
        return s == "ex24" ? example_sigma_24() : example_sigma_42();
    }
    SigmaMap m(c.d);
    for (const auto& [w, v] : read_word_table(s, c.d)) {
        if (v < -1 || v > 1) throw UsageError("sigma values must be -1, 0 or 1");
        try {
            m.set(w, static_cast<int>(v));
        } catch (const std::exception& e) {
            throw UsageError(std::string("sigma: ") + e.what());
        }
    }
    return m;
}

TorusChar read_theta(const RunConfig& c, RealCase rc, bool* generic) {
    if (c.theta.empty()) return generic_theta(c.p, c.d, rc, generic);
    TorusChar t;
    std::stringstream ss(c.theta);
    std::string x;
    while (std::getline(ss, x, ',')) {
        try {
            t.push_back(static_cast<int>(mod(std::stoll(x), c.p - 1)));
        } catch (const std::exception&) {
            throw UsageError("bad --theta entry " + x);
        }
    }
    if (static_cast<int>(t.size()) != c.d + 1) throw UsageError("--theta needs d+1 entries");
    Realization R(c.p, c.d, rc);
    *generic = true;
    SigmaMap dom(c.d);
    for (const auto& [v, _] : dom.table()) *generic &= rs_exponent(R, t, v) != 0;
    return t;
}

int cmd_filtration(const RunConfig& c) {
    Field F(c.p, field_degree(c));
    RealCase rc = cases(c, false).front();
    bool generic = false;
    TorusChar theta = read_theta(c, rc, &generic);
    SigmaMap sigma = read_sigma(c);
    auto W = weyl_elements(c.d);
    std::vector<Elt> eps(W.size(), 1);
    if (!c.eps.empty()) {
        for (const auto& [w, v] : read_word_table(c.eps, c.d)) {
            Elt e = static_cast<Elt>(mod(v, F.q()));
            if (e == 0) throw UsageError("eps values must be nonzero");
            eps[std::find(W.begin(), W.end(), w) - W.begin()] = e;
        }
    }
    ReducedStandardModule M;
    try {
        M = reduced_standard_make(F, rc, theta, sigma, eps);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("reduced standard module: ") + e.what());
    }
    auto filt = admissible_filtration(sigma);
    std::vector<CyclicPiece> pieces;
    try {
        pieces = filtration_to_cyclics(F, M, filt);
    } catch (const std::invalid_argument& e) {
        std::cerr << "hypothesis violated: " << e.what() << "\n";
        return 1;
    }
    int N = c.depth > 0 ? c.depth : 3;
    warn_depth(N, 3, "cyclic-piece");
    Report rep = validate_cyclics_h0(F, M, filt, pieces, N);
    std::string adm = verify_admissible(filt, sigma);
    rep.add("admissible", "d=" + std::to_string(c.d), adm.empty(), adm);

    int gdim = galois_rank(pieces);
    json levels = json::array();
    std::ostringstream text, csv;
    text << "p=" << c.p << " q=" << F.q() << " d=" << c.d << " case=" << case_name(rc) << " theta=("
         << join(theta, ",") << ")" << (generic ? "" : " [not generic]") << "\n";
    csv << "level,orbit,k,rho,eta,branches,dimension,h,s,beta_power,E\n";
    for (size_t li = 0; li < filt.levels.size(); ++li) {
        json L;
        L["level"] = li + 1;
        std::vector<std::string> mem;
        for (const auto& w : filt.levels[li].members) mem.push_back(perm_word(w));
        L["members"] = mem;
        text << "level " << li + 1 << ": {" << join(mem, ", ") << "}\n";
        json orbits = json::array();
        for (const auto& pc : pieces) {
            if (pc.level != static_cast<int>(li) + 1) continue;
            std::vector<std::string> cyc;
            for (const auto& w : pc.orbit) cyc.push_back(perm_word(w));
            json o;
            o["cycle"] = cyc;
            o["k"] = pc.mod.k;
            o["rho"] = elts(F, pc.mod.rho);
            o["eta"] = pc.mod.eta;
            o["branches"] = pc.branch;
            auto P = params_from_cyclic(F, pc.mod);
            int dim = P ? P->level : 0;
            o["dimension"] = dim;
            std::string gtext = "dimension 0";
            if (P) {
                auto nf = normalize(*P);
                o["galois"] = {{"level", P->level}, {"h", P->h}, {"s", P->s}, {"beta_power", F.str(P->beta_power)},
                               {"E", nf.E}};
                gtext = P->str(F);
            } else {
                o["galois"] = nullptr;
            }
            orbits.push_back(o);
            text << "  (" << join(cyc, " -> ") << ") k=(" << join(pc.mod.k, ",") << ") rho=("
                 << join(elts(F, pc.mod.rho), ",") << ") eta=(" << join(pc.mod.eta, ",") << ") : " << gtext << "\n";
            csv << li + 1 << "," << join(cyc, ";") << "," << join(pc.mod.k, ";") << ","
                << join(elts(F, pc.mod.rho), ";") << "," << join(pc.mod.eta, ";") << "," << join(pc.branch, ";")
                << "," << dim << ",";
            if (P) csv << P->h << "," << P->s << "," << F.str(P->beta_power) << "," << join(normalize(*P).E, ";");
            else csv << ",,,";
            csv << "\n";
        }
        L["orbits"] = orbits;
        levels.push_back(L);
    }
    text << "galois dimension " << gdim << ", dim M = " << W.size() << "\n";
    std::string outtext;
    if (c.format == "json") {
        json j;
        j["schema"] = "hkphi.filtration/1";
        j["p"] = c.p;
        j["q"] = F.q();
        j["d"] = c.d;
        j["case"] = case_name(rc);
        j["theta"] = theta;
        j["generic"] = generic;
        json sg;
        for (const auto& [w, v] : sigma.table()) sg[perm_word(w)] = v;
        j["sigma"] = sg;
        j["levels"] = levels;
        j["galois_dimension"] = gdim;
        j["dim_M"] = W.size();
        j["checks"] = nlohmann::ordered_json::parse(rep.to_json())["checks"];
        j["pass"] = rep.ok();
        outtext = j.dump(2) + "\n";
    } else if (c.format == "csv") {
        outtext = csv.str();
    } else {
        outtext = text.str() + rep.to_text();
    }
    emit(c, outtext);
    return rep.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Iwahori-Hecke modules, (phi,Gamma)-modules and Galois parameters"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig c;
    app.add_option("--p", c.p, "residue characteristic (odd prime)");
    app.add_option("--q", c.q, "field size, a power of p (default p)");
    app.add_option("--d", c.d, "rank parameter, G = GL_{d+1}")->check(CLI::Range(1, 4));
    app.add_option("--case", c.rc, "realization A or B");
    app.add_option("--b", c.b, "b as a discrete log (default: all b)");
    app.add_option("--depth", c.depth, "truncation depth or m bound");
    app.add_option("--format", c.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--out", c.out, "output file (default stdout)");
    app.add_option("--seed", c.seed, "seed for sampled checks");

    app.add_subcommand("table", "supersingular modules and their Galois parameters");
    auto* check = app.add_subcommand("check", "run a verification suite");
    check->add_option("suite", c.suite, "sl2, embedding, homology, bijection or filtration")
        ->required()
        ->check(CLI::IsMember({"sl2", "embedding", "homology", "bijection", "filtration"}));
    auto* filt = app.add_subcommand("filtration", "admissible filtration and cyclic pieces of a reduced standard module");
    filt->add_option("--theta", c.theta, "torus character exponents a_0,...,a_d (default: generic)");
    filt->add_option("--sigma", c.sigma, "-1, 0, 1, ex24, ex42 or a file of 'word value' lines");
    filt->add_option("--eps", c.eps, "file of 'word value' lines (default all 1)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    try {
        if (app.got_subcommand("table")) return cmd_table(c);
        if (app.got_subcommand("check")) return cmd_check(c);
        return cmd_filtration(c);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
