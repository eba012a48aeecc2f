#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <future>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "ckq/classical.hpp"
#include "ckq/dual.hpp"
#include "ckq/frt.hpp"
#include "ckq/pimenov.hpp"
#include "ckq/pimenov_suite.hpp"
#include "ckq/sow.hpp"

using namespace ckq;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string signature = "1,1";
    std::vector<std::string> v;
    std::uint64_t seed = 20240611;
    std::optional<double> tolerance;
    int trunc = 8;
    int n = 3;
    std::string format = "json";
    bool timing = false;
    std::string out;
};

// key = value lines; '#' starts a comment
std::map<std::string, std::string> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file '" + path + "'");
    static const std::set<std::string> known = {"j", "v", "seed", "tol", "trunc", "n", "format"};
    std::map<std::string, std::string> kv;
    std::string line;
    for (int no = 1; std::getline(in, line); ++no) {
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        auto trim = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t\r"));
            s.erase(s.find_last_not_of(" \t\r") + 1);
            return s;
        };
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError(path + ":" + std::to_string(no) + ": expected key = value");
        std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        if (val.size() >= 2 && val.front() == '"' && val.back() == '"') val = val.substr(1, val.size() - 2);
        if (!known.count(key)) throw UsageError(path + ":" + std::to_string(no) + ": unknown field '" + key + "'");
        if (val.empty()) throw UsageError(path + ":" + std::to_string(no) + ": empty value for '" + key + "'");
        kv[key] = val;
    }
    return kv;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, sep);) out.push_back(item);
    return out;
}

Signature parse_signature(const std::string& text) {
    try {
        return Signature::parse(text);
    } catch (const std::exception& e) {
        throw UsageError(std::string("bad signature: ") + e.what());
    }
}

Signature quantum_signature(const std::string& text) {
    const Signature sig = parse_signature(text);
    if (!sig.quantum_allowed())
        throw UsageError("signature " + sig.str() +
                         " is not allowed here: in the quantum deformation each j_k takes only two values, 1 or a "
                         "nilpotent unit (tokens 1 and n)");
    if (sig.N() != 3) throw UsageError("quantum commands need a two-slot signature (N = 3)");
    return sig;
}

std::vector<cplx> v_samples(const RunConfig& c) {
    std::vector<cplx> vs;
    const std::vector<std::string> src = c.v.empty() ? std::vector<std::string>{"0.37", "0.61+0.29i"} : c.v;
    for (const auto& s : src) {
        try {
            vs.push_back(parse_complex(s));
        } catch (const std::exception& e) {
            throw UsageError(std::string("--v: ") + e.what());
        }
    }
    return vs;
}

double parse_double(const std::string& field, const std::string& s) {
    try {
        std::size_t used = 0;
        const double x = std::stod(s, &used);
        if (used == s.size()) return x;
    } catch (const std::exception&) {
    }
    throw UsageError(field + ": not a number '" + s + "'");
}

std::ostream* g_out = &std::cout;

void apply_tolerance(std::vector<Report>& reps, const RunConfig& c) {
    if (!c.tolerance) return;
    for (auto& r : reps) {
        r.tolerance = *c.tolerance;
        r.finish();
    }
}

std::string num(double x) {
    std::ostringstream s;
    s << std::setprecision(3) << std::scientific << x;
    return s.str();
}

// sorted by check id, then by inputs, so the stream does not depend on completion order
int print_reports(std::vector<Report> reps, const RunConfig& c) {
    apply_tolerance(reps, c);
    std::stable_sort(reps.begin(), reps.end(), [](const Report& a, const Report& b) {
        if (a.check != b.check) return a.check < b.check;
        return a.inputs.dump() < b.inputs.dump();
    });
    std::ostream& os = *g_out;
    if (c.format == "json") {
        for (const auto& r : reps) os << r.to_json(c.timing).dump() << "\n";
    } else {
        const bool csv = c.format == "csv";
        std::vector<std::array<std::string, 5>> rows;
        rows.push_back({"check", "inputs", "residual", "tolerance", "pass"});
        for (const auto& r : reps) {
            std::string in;
            for (auto it = r.inputs.begin(); it != r.inputs.end(); ++it) {
                if (!in.empty()) in += csv ? ";" : " ";
                in += it.key() + "=" + (it.value().is_string() ? it.value().get<std::string>() : it.value().dump());
            }
            bool cond = true;
            for (const auto& p : r.conditions) cond = cond && p.second;
            rows.push_back({r.check, in, num(r.residual), num(r.tolerance),
                            r.pass ? "PASS" : (cond ? "FAIL" : "FAIL(condition)")});
        }
        if (csv) {
            for (const auto& row : rows) {
                for (int k = 0; k < 5; ++k) {
                    std::string cell = row[k];
                    if (cell.find_first_of(",\"") != std::string::npos) {
                        std::string q = "\"";
                        for (char ch : cell) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
                        cell = q + "\"";
                    }
                    os << (k ? "," : "") << cell;
                }
                os << "\n";
            }
        } else {
            std::array<std::size_t, 5> w{};
            for (const auto& row : rows)
                for (int k = 0; k < 5; ++k) w[k] = std::max(w[k], row[k].size());
            for (const auto& row : rows) {
                for (int k = 0; k < 5; ++k) os << std::left << std::setw(int(w[k]) + 2) << row[k];
                os << "\n";
            }
        }
    }
    return std::all_of(reps.begin(), reps.end(), [](const Report& r) { return r.pass; }) ? 0 : 1;
}

using Task = std::function<std::vector<Report>()>;

std::vector<Report> run_tasks(const std::vector<Task>& tasks) {
    std::vector<std::future<std::vector<Report>>> fut;
    for (const auto& t : tasks) fut.push_back(std::async(std::launch::async, t));
    std::vector<Report> out;
    for (auto& f : fut) {
        auto r = f.get();
        out.insert(out.end(), r.begin(), r.end());
    }
    return out;
}

std::vector<Task> suite_tasks(const std::string& suite, const RunConfig& c) {
    std::vector<Task> tasks;
    const bool all = suite == "all";
    if (all || suite == "pimenov") tasks.push_back([c] { return verify_pimenov(c.seed); });
    if (all || suite == "classical")
        for (int N : {2, 3, 4}) tasks.push_back([c, N] { return verify_classical(N, c.seed); });
    if (all || suite == "frt" || suite == "dual") {
        const Signature sig = quantum_signature(c.signature);
        const std::vector<cplx> vs = v_samples(c);
        if (all || suite == "frt")
            for (cplx v : vs) tasks.push_back([sig, v] { return verify_frt(sig, {v}); });
        if (all || suite == "dual") {
            for (cplx v : vs) tasks.push_back([sig, v, c] { return verify_dual_rep(sig, {v}, c.seed); });
            tasks.push_back([sig, c] { return std::vector<Report>{verify_sow_hopf(sig, c.trunc)}; });
            tasks.push_back([sig, c] { return std::vector<Report>{verify_duality_isomorphism(sig, c.trunc)}; });
            tasks.push_back([sig] { return std::vector<Report>{verify_truncation_decay("sow_hopf", sig)}; });
            tasks.push_back([sig] { return std::vector<Report>{verify_truncation_decay("iso", sig)}; });
        }
    }
    if (tasks.empty()) throw UsageError("unknown suite '" + suite + "' (pimenov, classical, frt, dual, all)");
    return tasks;
}

std::string cell(const Pim& p) { return p.str(6); }

void print_dmat(const DMat& M, const RunConfig& c) {
    std::ostream& os = *g_out;
    if (c.format == "json") {
        json rows = json::array();
        for (int i = 0; i < M.rows(); ++i) {
            json row = json::array();
            for (int j = 0; j < M.cols(); ++j) row.push_back(cell(M(i, j)));
            rows.push_back(row);
        }
        os << json{{"rows", M.rows()}, {"cols", M.cols()}, {"entries", rows}}.dump() << "\n";
        return;
    }
    std::vector<std::size_t> w(M.cols(), 0);
    for (int i = 0; i < M.rows(); ++i)
        for (int j = 0; j < M.cols(); ++j) w[j] = std::max(w[j], cell(M(i, j)).size());
    for (int i = 0; i < M.rows(); ++i) {
        for (int j = 0; j < M.cols(); ++j) {
            if (c.format == "csv")
                os << (j ? "," : "") << "\"" << cell(M(i, j)) << "\"";
            else
                os << std::left << std::setw(int(w[j]) + 2) << cell(M(i, j));
        }
        os << "\n";
    }
}

int emit_rmatrix(const RunConfig& c) {
    const Signature sig = quantum_signature(c.signature);
    const cplx v = v_samples(c).front();
    print_dmat(rmatrix3(sig, v).R, c);
    return 0;
}

int emit_relations(const RunConfig& c) {
    const Signature sig = quantum_signature(c.signature);
    const cplx v = v_samples(c).front();
    const RMatrix R = rmatrix3(sig, v);
    json j = relations_to_json(rtt_relations(R), component_names());
    j["signature"] = sig.str();
    j["v"] = format_complex(v);
    *g_out << j.dump(c.format == "json" ? -1 : 2) << "\n";
    return 0;
}

int emit_pairing_table(const RunConfig& c) {
    const Signature sig = quantum_signature(c.signature);
    const cplx v = v_samples(c).front();
    std::ostream& os = *g_out;
    const auto rows = pairing_table(sig, v);
    std::vector<std::array<std::string, 7>> out;
    out.push_back({"l", "t", "formula", "printed", "computed", "diff", "status"});
    for (const auto& r : rows) {
        if (!r.listed && r.rhs.max_abs() == 0) continue;
        const std::string status = !r.listed ? "unlisted" : (r.diff <= 1e-10 ? "match" : "mismatch");
        out.push_back({r.l, r.t, r.listed ? r.printed : "-", r.listed ? r.lhs.str(8) : "-", r.rhs.str(8), num(r.diff), status});
    }
    if (c.format == "json") {
        for (std::size_t k = 1; k < out.size(); ++k)
            os << json{{"l", out[k][0]}, {"t", out[k][1]}, {"formula", out[k][2]}, {"printed", out[k][3]},
                       {"computed", out[k][4]}, {"diff", out[k][5]}, {"status", out[k][6]}}
                      .dump()
               << "\n";
        return 0;
    }
    std::array<std::size_t, 7> w{};
    for (const auto& row : out)
        for (int k = 0; k < 7; ++k) w[k] = std::max(w[k], row[k].size());
    for (const auto& row : out) {
        for (int k = 0; k < 7; ++k) {
            if (c.format == "csv")
                os << (k ? "," : "") << "\"" << row[k] << "\"";
            else
                os << std::left << std::setw(int(w[k]) + 2) << row[k];
        }
        os << "\n";
    }
    return 0;
}

int emit_orbit(const std::string& plane, const std::string& from, int steps, double dphi) {
    const auto xs = split(from, ',');
    if (xs.size() != 2) throw UsageError("--from expects x0,x1");
    const double x0 = parse_double("--from", xs[0]), x1 = parse_double("--from", xs[1]);
    if (steps < 1) throw UsageError("--steps must be positive");
    std::vector<double> phis;
    for (int k = 0; k <= steps; ++k) phis.push_back(k * dphi);
    std::vector<OrbitPoint> pts;
    try {
        pts = orbit_sample(plane, x0, x1, phis);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    std::ostream& os = *g_out;
    os << "phi,x0,x1\n" << std::setprecision(15);
    for (const auto& p : pts) os << p.phi << "," << p.x0 << "," << p.x1 << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ckqw: Cayley-Klein quantum group verification toolkit"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string config_path, seed_flag, tol_flag;

    auto common = [&](CLI::App* s, bool quantum) {
        s->add_option("--seed", seed_flag, "RNG seed");
        s->add_option("--tol", tol_flag, "override the residual tolerance of every check");
        s->add_option("--config", config_path, "key = value config file");
        s->add_option("--format", cfg.format, "json | table | csv")->check(CLI::IsMember({"json", "table", "csv"}));
        s->add_flag("--timing", cfg.timing, "include wall time in reports");
        s->add_option("--out", cfg.out, "write to this file instead of stdout");
        if (quantum) {
            s->add_option("--j", cfg.signature, "signature, e.g. n,1");
            s->add_option("--v", cfg.v, "deformation parameter(s), e.g. 0.37 or 0.61+0.29i")->take_all();
        }
    };

    // pim eval
    auto* pim = app.add_subcommand("pim", "Pimenov algebra")->require_subcommand(1);
    auto* pim_eval = pim->add_subcommand("eval", "apply an analytic function to an element of D_n");
    std::string expr, fname = "exp";
    int pim_n = -1;
    pim_eval->add_option("expr", expr, "element, e.g. '1 + 2*i1 - 0.5*i1*i2'")->required();
    pim_eval->add_option("--f", fname, "exp sin cos sinh cosh log sqrt");
    pim_eval->add_option("--n", pim_n, "number of tags (default: highest tag used)");
    common(pim_eval, false);

    // ck
    auto* ck = app.add_subcommand("ck", "classical Cayley-Klein groups")->require_subcommand(1);
    auto* ck_rotate = ck->add_subcommand("rotate", "elementary rotation matrix");
    std::string plane_pair = "1,2", rot_form = "special";
    double phi = 0.5;
    ck_rotate->add_option("--n", cfg.n, "matrix size N");
    ck_rotate->add_option("--j", cfg.signature, "signature with N-1 slots");
    ck_rotate->add_option("--plane", plane_pair, "mu,nu with 1 <= mu < nu <= N");
    ck_rotate->add_option("--phi", phi, "angle");
    ck_rotate->add_option("--form", rot_form, "special | real")->check(CLI::IsMember({"special", "real"}));
    common(ck_rotate, false);
    auto* ck_orbit = ck->add_subcommand("orbit", "orbit of a point in a CK plane, CSV phi,x0,x1");
    std::string orbit_plane = "euclid", orbit_from = "1,0";
    int steps = 16;
    double dphi = 0.1;
    ck_orbit->add_option("--plane", orbit_plane, "euclid | galilei | minkowski");
    ck_orbit->add_option("--from", orbit_from, "x0,x1");
    ck_orbit->add_option("--steps", steps, "number of steps");
    ck_orbit->add_option("--dphi", dphi, "step in phi");
    common(ck_orbit, false);
    auto* ck_verify = ck->add_subcommand("verify", "classical property suite");
    std::string ck_what = "classical";
    ck_verify->add_option("what", ck_what)->check(CLI::IsMember({"classical"}));
    ck_verify->add_option("--n", cfg.n, "matrix size N (2..6)");
    common(ck_verify, false);

    // frt
    auto* frt = app.add_subcommand("frt", "FRT quantum group SO_v(3;j)")->require_subcommand(1);
    auto* frt_r = frt->add_subcommand("rmatrix", "print the R-matrix");
    common(frt_r, true);
    auto* frt_rel = frt->add_subcommand("relations", "RTT relations as JSON");
    common(frt_rel, true);
    auto* frt_verify = frt->add_subcommand("verify", "group-side checks");
    std::string frt_what = "all";
    frt_verify->add_option("what", frt_what)
        ->check(CLI::IsMember({"qybe", "confluence", "antipode", "coproduct", "counit", "contraction", "all"}));
    common(frt_verify, true);

    // dual
    auto* dual = app.add_subcommand("dual", "dual quantum algebra")->require_subcommand(1);
    auto* dual_verify = dual->add_subcommand("verify", "dual-side checks");
    std::string dual_what;
    dual_verify->add_option("what", dual_what)
        ->required()
        ->check(CLI::IsMember({"pairing", "lrel", "commutators", "rho", "sow-hopf", "iso", "decay", "all"}));
    dual_verify->add_option("--trunc", cfg.trunc, "truncation order d_w = d_X");
    common(dual_verify, true);

    // verify
    auto* verify = app.add_subcommand("verify", "run a suite");
    std::string suite = "all";
    verify->add_option("suite", suite, "pimenov | classical | frt | dual | all")
        ->check(CLI::IsMember({"pimenov", "classical", "frt", "dual", "all"}));
    verify->add_option("--trunc", cfg.trunc, "truncation order for the so_w checks");
    common(verify, true);

    // emit
    auto* emit = app.add_subcommand("emit", "emit data");
    std::string emit_what;
    emit->add_option("what", emit_what)->required()->check(
        CLI::IsMember({"rmatrix", "relations", "orbit", "pairing-table"}));
    emit->add_option("--plane", orbit_plane, "orbit plane");
    emit->add_option("--from", orbit_from, "orbit start x0,x1");
    emit->add_option("--steps", steps, "orbit steps");
    emit->add_option("--dphi", dphi, "orbit step in phi");
    common(emit, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    std::ofstream file;
    try {
        // precedence: flag > CKQW_SEED > config file > default
        if (!config_path.empty()) {
            const auto kv = read_config(config_path);
            auto has_flag = [&](const std::string& name) {
                auto given = [&](CLI::App* a) {
                    const CLI::Option* o = a->get_option_no_throw(name);
                    return o && o->count() > 0;
                };
                for (CLI::App* s : app.get_subcommands()) {
                    if (given(s)) return true;
                    for (CLI::App* t : s->get_subcommands())
                        if (given(t)) return true;
                }
                return false;
            };
            for (const auto& [k, val] : kv) {
                const std::string where = config_path + ": field '" + k + "'";
                if (k == "j" && !has_flag("--j")) cfg.signature = val;
                if (k == "v" && !has_flag("--v")) cfg.v = split(val, ' ');
                if (k == "seed" && seed_flag.empty()) seed_flag = val;
                if (k == "tol" && tol_flag.empty()) tol_flag = val;
                if (k == "trunc" && !has_flag("--trunc")) cfg.trunc = int(parse_double(where, val));
                if (k == "n" && !has_flag("--n")) cfg.n = int(parse_double(where, val));
                if (k == "format" && !has_flag("--format")) {
                    if (val != "json" && val != "table" && val != "csv") throw UsageError(where + ": unknown format");
                    cfg.format = val;
                }
            }
            if (const char* env = std::getenv("CKQW_SEED"); env && kv.count("seed") && seed_flag == kv.at("seed"))
                seed_flag = env;
        } else if (const char* env = std::getenv("CKQW_SEED"); env && seed_flag.empty()) {
            seed_flag = env;
        }
        if (!seed_flag.empty()) {
            try {
                std::size_t used = 0;
                cfg.seed = std::stoull(seed_flag, &used);
                if (used != seed_flag.size()) throw std::invalid_argument(seed_flag);
            } catch (const std::exception&) {
                throw UsageError("seed must be a non-negative integer, got '" + seed_flag + "'");
            }
        }
        if (!tol_flag.empty()) {
            cfg.tolerance = parse_double("tolerance", tol_flag);
            if (!(*cfg.tolerance > 0)) throw UsageError("tolerance must be positive");
        }
        if (cfg.trunc < 2 || cfg.trunc > 24) throw UsageError("--trunc must lie in [2, 24]");
        if (!cfg.out.empty()) {
            file.open(cfg.out);
            if (!file) throw std::runtime_error("cannot write '" + cfg.out + "'");
            g_out = &file;
        }

        if (pim_eval->parsed()) {
            const Pim a = parse_pim(expr, pim_n);
            const Pim r = pim_apply(kernels::by_name(fname), a);
            if (cfg.format == "json")
                *g_out << json{{"f", fname}, {"arg", a.str(12)}, {"value", r.str(12)}}.dump() << "\n";
            else
                *g_out << r.str(12) << "\n";
            return 0;
        }
        if (ck_rotate->parsed()) {
            const Signature sig = parse_signature(cfg.signature);
            const auto p = split(plane_pair, ',');
            if (p.size() != 2) throw UsageError("--plane expects mu,nu");
            const int mu = int(parse_double("--plane", p[0])), nu = int(parse_double("--plane", p[1]));
            if (sig.N() != cfg.n && ck_rotate->count("--n"))
                throw UsageError("signature " + sig.str() + " has " + std::to_string(sig.tags()) + " slots, N = " +
                                 std::to_string(cfg.n) + " needs " + std::to_string(cfg.n - 1));
            if (!(1 <= mu && mu < nu && nu <= sig.N())) throw UsageError("--plane needs 1 <= mu < nu <= N");
            print_dmat(elementary_rotation(sig, mu, nu, phi, rot_form == "real" ? Form::Real : Form::Special), cfg);
            return 0;
        }
        if (ck_orbit->parsed()) return emit_orbit(orbit_plane, orbit_from, steps, dphi);
        if (ck_verify->parsed()) {
            if (cfg.n < 2 || cfg.n > 6) throw UsageError("--n must lie in [2, 6]");
            return print_reports(verify_classical(cfg.n, cfg.seed), cfg);
        }
        if (frt_r->parsed()) return emit_rmatrix(cfg);
        if (frt_rel->parsed()) return emit_relations(cfg);
        if (frt_verify->parsed()) {
            const Signature sig = quantum_signature(cfg.signature);
            std::vector<Task> tasks;
            for (cplx v : v_samples(cfg)) {
                if (frt_what == "all") {
                    tasks.push_back([sig, v] { return verify_frt(sig, {v}); });
                } else if (frt_what == "qybe") {
                    tasks.push_back([sig, v] { return std::vector<Report>{verify_qybe(rmatrix3(sig, v))}; });
                } else if (frt_what == "contraction") {
                    tasks.push_back([sig, v] { return std::vector<Report>{verify_contraction_transform(sig, v)}; });
                } else {
                    tasks.push_back([sig, v, frt_what] {
                        const FrtSystem f = build_frt(sig, v);
                        if (frt_what == "confluence") return std::vector<Report>{verify_confluence(f)};
                        if (frt_what == "antipode") return std::vector<Report>{verify_antipode(f)};
                        if (frt_what == "coproduct") return std::vector<Report>{verify_coproduct(f)};
                        return std::vector<Report>{verify_counit(f)};
                    });
                }
            }
            return print_reports(run_tasks(tasks), cfg);
        }
        if (dual_verify->parsed()) {
            const Signature sig = quantum_signature(cfg.signature);
            const std::vector<cplx> vs = v_samples(cfg);
            std::vector<Task> tasks;
            const int d = cfg.trunc;
            const std::uint64_t seed = cfg.seed;
            auto one = [&](std::function<Report()> f) { tasks.push_back([f] { return std::vector<Report>{f()}; }); };
            const std::string w = dual_what;
            for (cplx v : vs) {
                if (w == "pairing") one([sig, v] { return verify_pairing_table(sig, v); });
                if (w == "lrel") one([sig, v] { return verify_L_relations(sig, v); });
                if (w == "commutators") one([sig, v] { return verify_dual_commutators(sig, v); });
                if (w == "rho") one([sig, v, seed] { return verify_rho_homomorphism(sig, v, seed); });
                if (w == "all") tasks.push_back([sig, v, seed] { return verify_dual_rep(sig, {v}, seed); });
            }
            if (w == "sow-hopf" || w == "all") one([sig, d] { return verify_sow_hopf(sig, d); });
            if (w == "iso" || w == "all") one([sig, d] { return verify_duality_isomorphism(sig, d); });
            if (w == "decay" || w == "all") {
                one([sig] { return verify_truncation_decay("sow_hopf", sig); });
                one([sig] { return verify_truncation_decay("iso", sig); });
            }
            return print_reports(run_tasks(tasks), cfg);
        }
        if (verify->parsed()) return print_reports(run_tasks(suite_tasks(suite, cfg)), cfg);
        if (emit->parsed()) {
            if (emit_what == "rmatrix") return emit_rmatrix(cfg);
            if (emit_what == "relations") return emit_relations(cfg);
            if (emit_what == "pairing-table") return emit_pairing_table(cfg);
            return emit_orbit(orbit_plane, orbit_from, steps, dphi);
        }
    } catch (const UsageError& e) {
        std::cerr << "ckqw: " << e.what() << "\n";
        return 2;
    } catch (const QuantumSignatureError& e) {
        std::cerr << "ckqw: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "ckqw: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "ckqw: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
