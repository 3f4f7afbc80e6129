#include "ccbil/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "ccbil/bounds.hpp"
#include "ccbil/io.hpp"

namespace ccb {

namespace {

constexpr int kOk = 0, kVerifyFail = 1, kUsage = 2, kExhausted = 3;

std::string default_costs_path() {
    if (const char* env = std::getenv("CCBIL_DATA_DIR")) return std::string(env) + "/reference_inner_costs.tsv";
    return std::string(CCBIL_DATA_DIR) + "/reference_inner_costs.tsv";
}

int cmd_synth(BoundTable& T, uint32_t q, uint32_t m, uint32_t l, int genus, const std::string& g1case, bool sym,
              uint64_t seed, const std::string& outfile, std::ostream& out, std::ostream& err) {
    Workspace& ws = T.workspace();
    BilinearAlgorithm alg;
    std::string strategy, planinfo;
    if (genus == 0) {
        CellCost cost = [&](int d, int u) -> std::optional<long> {
            if (d * u >= static_cast<int>(m * l)) return std::nullopt;
            return T.improve(q, static_cast<uint32_t>(d), static_cast<uint32_t>(u), sym).bound;
        };
        const SmallField& F = ws.field(q);
        int target = 2 * static_cast<int>(m * l) - 1;
        int dmax = 1;
        long capacity = 0;
        while (dmax <= 8) {
            capacity += static_cast<long>(dmax) * (dmax == 1 ? q + 1 : irreducible_count(F, dmax));
            if (capacity >= target + 8) break;
            ++dmax;
        }
        std::vector<long> budgets(static_cast<size_t>(std::min(dmax, 8)) + 1, 0);
        budgets[1] = q + 1;
        for (int d = 2; d < static_cast<int>(budgets.size()); ++d) budgets[static_cast<size_t>(d)] = irreducible_count(F, d);
        auto cells = plan_cells(budgets, target, false, std::min<int>(static_cast<int>(m * l) - 1, 8), cost);
        if (!cells) {
            err << "no genus-0 plan found\n";
            return kExhausted;
        }
        auto plan = make_p1_plan(ws, q, m, l, cells->cells);
        plan.symmetric = sym ? plan.symmetric : false;
        alg = assemble(ws, plan, [&](int d, int u, bool s) {
            return T.rebuild(q, static_cast<uint32_t>(d), static_cast<uint32_t>(u), s);
        });
        strategy = "genus0";
        planinfo = serialize_plan(plan);
    } else if (genus == 1) {
        auto pick = T.genus1_best(q, m, l, sym);
        if (!pick) {
            err << "no admissible genus-1 curve/plan found\n";
            return kExhausted;
        }
        const EllipticCurve* C = curve_with_trace(ws, q, pick->trace);
        G1Mode mode = pick->mode;
        if (!g1case.empty()) {
            if (g1case == "a") mode = G1Mode::case_a;
            else if (g1case == "b") mode = G1Mode::case_b;
            else if (g1case == "c") mode = G1Mode::case_c;
            else if (g1case == "d") mode = G1Mode::case_d;
            else if (g1case == "iter-asym") mode = G1Mode::iter_asym;
            else if (g1case == "iter-sym") mode = G1Mode::iter_sym;
            else if (g1case == "class") mode = G1Mode::class_search;
            else {
                err << "unknown case: " << g1case << "\n";
                return kUsage;
            }
        }
        std::optional<ECPlan> plan;
        try {
            plan = make_ec_plan(ws, *C, m, l, pick->cells, mode, seed);
        } catch (const std::exception& e) {
            err << "selection failed: " << e.what() << "\n";
            return kExhausted;
        }
        if (!plan) {
            err << "no READY genus-1 plan for the requested case\n";
            return kExhausted;
        }
        ECPlan p = *plan;
        if (!sym) p.symmetric = false;
        if (sym && !p.symmetric) {
            err << "requested symmetric output but the selection is asymmetric\n";
            return kExhausted;
        }
        alg = assemble(ws, p, [&](int d, int u, bool s) {
            return T.rebuild(q, static_cast<uint32_t>(d), static_cast<uint32_t>(u), s);
        });
        strategy = "genus1";
        planinfo = serialize_plan(p);
    } else {
        auto& cert = T.improve(q, m, l, sym);
        alg = T.rebuild(cert);
        strategy = strategy_name(cert.recipe.s);
    }
    out << "length=" << alg.length() << " sym=" << (alg.symmetric ? 1 : 0) << " strategy=" << strategy << "\n";
    if (!outfile.empty()) {
        std::ofstream f(outfile);
        if (!f) {
            err << "cannot write " << outfile << "\n";
            return kUsage;
        }
        f << write_bilalg(alg, planinfo);
    }
    return kOk;
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"bilinear multiplication algorithms by curve interpolation"};
    app.require_subcommand(1);

    // synth
    auto* synth = app.add_subcommand("synth", "synthesize a verified algorithm for A_q(m,l)");
    uint32_t q = 2, m = 1, l = 1;
    int genus = -1;
    std::string g1case, outfile;
    bool sym = false;
    uint64_t seed = 0;
    synth->add_option("--q", q, "base field size")->required();
    synth->add_option("--m", m, "residue degree")->required();
    synth->add_option("--l", l, "truncation order")->required();
    synth->add_option("--genus", genus, "force interpolation genus (0 or 1)");
    synth->add_option("--case", g1case, "genus-1 selection: a|b|c|d|iter-asym|iter-sym|class");
    synth->add_flag("--sym", sym, "synthesize a symmetric algorithm");
    synth->add_option("--seed", seed, "seed for randomized point sampling");
    synth->add_option("--out", outfile, "write the algorithm in interchange format");

    // verify
    auto* ver = app.add_subcommand("verify", "check an interchange file exhaustively");
    std::string verfile;
    ver->add_option("file", verfile, "algorithm file")->required();

    // rank
    auto* rank_cmd = app.add_subcommand("rank", "exact tensor rank by exhaustive search");
    uint32_t rq = 2;
    int rdim = 1, rcap = 1;
    bool rsym = false;
    std::string constsfile;
    rank_cmd->add_option("--q", rq, "base field size")->required();
    rank_cmd->add_option("--dim", rdim, "algebra dimension")->required();
    rank_cmd->add_option("--constants", constsfile, "structure constants file")->required();
    rank_cmd->add_option("--cap", rcap, "search cap")->required();
    rank_cmd->add_flag("--sym", rsym, "symmetric rank");

    // table
    auto* table_cmd = app.add_subcommand("table", "recursive bound table");
    uint32_t tq = 2;
    int maxml = 4;
    std::string exportdir;
    bool tsym = false;
    table_cmd->add_option("--q", tq, "base field size")->required();
    table_cmd->add_option("--max-ml", maxml, "table all (m,l) with m*l <= this")->required();
    table_cmd->add_flag("--sym", tsym, "also tabulate symmetric bounds");
    table_cmd->add_option("--export", exportdir, "write certificate bundle to a directory");

    // fixture
    auto* fix = app.add_subcommand("fixture", "run a named reproduction");
    std::string fixname, costsfile = default_costs_path();
    uint64_t fixseed = 0;
    fix->add_option("name", fixname, "f8-plane|mu2-163|mu3-97|mu-q-2-2|mu-q-4-2|remark-asym-gap")->required();
    fix->add_option("--inner-costs", costsfile, "reference inner-cost table (mu2-163)");
    fix->add_option("--seed", fixseed, "point sampling seed");

    std::vector<std::string> argv = args;
    std::vector<char*> cargv;
    cargv.push_back(const_cast<char*>("ccbil"));
    for (auto& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));
    try {
        app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kOk;
        }
        err << e.what() << "\n";
        return kUsage;
    }

    Workspace ws;
    BoundTable T(ws);
    try {
        if (app.got_subcommand(synth)) return cmd_synth(T, q, m, l, genus, g1case, sym, seed, outfile, out, err);
        if (app.got_subcommand(ver)) {
            BilinearAlgorithm alg;
            try {
                alg = read_bilalg_file(ws, verfile);
            } catch (const std::exception& e) {
                err << "parse error: " << e.what() << "\n";
                return kUsage;
            }
            auto bad = verify(alg);
            if (bad) {
                out << "fail a=" << bad->first << " b=" << bad->second << "\n";
                return kVerifyFail;
            }
            out << "verified length=" << alg.length() << " sym=" << (alg.symmetric ? 1 : 0) << "\n";
            return kOk;
        }
        if (app.got_subcommand(rank_cmd)) {
            std::ifstream in(constsfile);
            if (!in) {
                err << "cannot open " << constsfile << "\n";
                return kUsage;
            }
            AlgebraPtr A;
            try {
                A = read_consts(ws, in);
            } catch (const std::exception& e) {
                err << "parse error: " << e.what() << "\n";
                return kUsage;
            }
            if (A->dim != rdim || A->F->q != rq) {
                err << "constants file disagrees with --q/--dim\n";
                return kUsage;
            }
            auto r = brute_force_rank(A, rcap, rsym);
            if (!r.rank) {
                out << "rank>" << rcap << "\n";
                return kExhausted;
            }
            out << "rank=" << *r.rank << "\n";
            return kOk;
        }
        if (app.got_subcommand(table_cmd)) {
            for (int mm = 1; mm <= maxml; ++mm)
                for (int ll = 1; mm * ll <= maxml; ++ll) {
                    T.improve(tq, static_cast<uint32_t>(mm), static_cast<uint32_t>(ll), false);
                    if (tsym) T.improve(tq, static_cast<uint32_t>(mm), static_cast<uint32_t>(ll), true);
                }
            out << T.export_tsv();
            if (!exportdir.empty()) {
                std::filesystem::create_directories(exportdir);
                for (auto& [key, cert] : T.table()) {
                    auto alg = T.rebuild(cert);
                    std::string name = "q" + std::to_string(key.q) + "_m" + std::to_string(key.m) + "_l" +
                                       std::to_string(key.l) + (key.sym ? "_sym" : "") + ".alg";
                    std::ofstream f(std::filesystem::path(exportdir) / name);
                    f << write_bilalg(alg, strategy_name(cert.recipe.s));
                }
            }
            return kOk;
        }
        if (app.got_subcommand(fix)) {
            if (fixname == "mu2-163") T.load_reference_costs(costsfile);
            std::vector<FixtureReport> reports;
            try {
                reports = reproduce_fixture(T, fixname);
            } catch (const std::invalid_argument& e) {
                err << e.what() << "\n";
                return kUsage;
            }
            bool all_ok = true;
            for (auto& r : reports) {
                out << "fixture=" << r.name << " target=" << r.target << " achieved=" << r.achieved
                    << " verified=" << (r.verified ? 1 : 0);
                if (!r.notes.empty()) out << " notes=\"" << r.notes << "\"";
                out << "\n";
                all_ok &= r.verified;
            }
            return all_ok ? kOk : kVerifyFail;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

}  // namespace ccb
