// maccsim: construct, verify, build, simulate and sweep coded caching schemes
// for shared-link, 1D and 2D multi-access networks.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "maccsim/json_io.hpp"
#include "maccsim/macc2d.hpp"
#include "maccsim/sim.hpp"

namespace fs = std::filesystem;
using namespace maccsim;

namespace {

fs::path out_dir() {
    if (const char* env = std::getenv("MACCSIM_OUT_DIR")) return fs::path(env);
    return fs::path(".");
}

fs::path resolve_output(const std::string& explicit_path, const std::string& default_name) {
    if (!explicit_path.empty()) return fs::path(explicit_path);
    return out_dir() / default_name;
}

std::string slug(const Rational& r) {
    if (is_integer(r)) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "over" + std::to_string(r.denominator());
}

void print_report_line(const char* name, bool ok) {
    std::cout << "  " << name << ": " << (ok ? "pass" : "FAIL") << "\n";
}

int run_verify(const std::string& path, std::optional<int> t, std::optional<int> L) {
    json j = load_json_file(path);
    PdaArray p;
    if (j.contains("type") && j.at("type") == "partition_family") {
        auto fam = partition_from_json(j);
        p = fam.combined();
        std::cout << "partition family q=" << fam.q << " z=" << fam.z << " m=" << fam.m
                  << " (verifying the combined array)\n";
    } else {
        p = pda_from_json(j);
    }
    auto rep = verify_pda(p, t, L);
    std::cout << "array " << p.rows << "x" << p.cols << ", Z="
              << (p.z ? std::to_string(*p.z) : std::string("-")) << ", S=" << p.s << "\n";
    print_report_line("C1", rep.c1_ok);
    print_report_line("C2", rep.c2_ok);
    print_report_line("C3", rep.c3_ok);
    if (rep.c4_ok) print_report_line("C4", *rep.c4_ok);
    if (rep.c5_ok) print_report_line("C5", *rep.c5_ok);
    std::cout << "  gain histogram:";
    for (auto& [mult, count] : rep.gain_histogram)
        std::cout << " " << count << "x(gain " << mult << ")";
    std::cout << "\n";
    for (const auto& v : rep.violations) {
        std::cout << "  violation C" << v.condition << ": " << v.detail;
        for (auto& [r, c] : v.cells) std::cout << " (" << r + 1 << "," << c + 1 << ")";
        std::cout << "\n";
    }
    return rep.all_ok() ? 0 : 1;
}

std::vector<int> parse_demand(const std::string& spec, const SimPlan& plan, int files) {
    if (spec == "all-distinct") return all_distinct_demand(plan, files);
    if (spec.rfind("seed:", 0) == 0)
        return seeded_demand(plan, files, std::stoull(spec.substr(5)));
    throw std::invalid_argument("demand must be 'all-distinct' or 'seed:<k>'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coded caching scheme construction, verification and simulation"};
    app.require_subcommand(1);

    // construct-pda
    auto* construct = app.add_subcommand("construct-pda", "construct an MN or Partition array");
    std::string family;
    int mn_k = 0, mn_t = 0, par_q = 0, par_z = 0, par_m = 0;
    std::string construct_out;
    construct->add_option("--family", family, "mn | partition")->required();
    construct->add_option("--K", mn_k, "users (mn)");
    construct->add_option("--t", mn_t, "cache parameter (mn)");
    construct->add_option("--q", par_q, "columns per sub-array (partition)");
    construct->add_option("--z", par_z, "star run length (partition)");
    construct->add_option("--m", par_m, "sub-array count (partition)");
    construct->add_option("-o,--output", construct_out, "output path");

    // verify-pda
    auto* verify = app.add_subcommand("verify-pda", "check C1-C3 (and C4/C5 given t, L)");
    std::string verify_path;
    int verify_t = -1, verify_l = -1;
    verify->add_option("file", verify_path, "PDA or partition-family JSON")->required();
    verify->add_option("--t", verify_t, "row star count for C4/C5");
    verify->add_option("--L", verify_l, "access span for C5");

    // build-scheme
    auto* build = app.add_subcommand("build-scheme", "build a 2D MACC scheme");
    std::string kind, t_str, outer_path, build_out;
    int b_k1 = 0, b_k2 = 0, b_l = 0, b_n = 0;
    build->add_option("--kind", kind, "baseline | grouping | hybrid")->required();
    build->add_option("K1", b_k1)->required();
    build->add_option("K2", b_k2)->required();
    build->add_option("L", b_l)->required();
    build->add_option("t", t_str, "integer, or a/b on the baseline MDS grid")->required();
    build->add_option("N", b_n)->required();
    build->add_option("--outer", outer_path, "outer PDA JSON (hybrid only)");
    build->add_option("-o,--output", build_out, "output path");

    // simulate
    auto* sim = app.add_subcommand("simulate", "bit-exact placement/delivery/decode run");
    std::string scheme_path, demand_spec = "all-distinct", sim_out;
    int sim_files = 0, packet_size = 64;
    bool transcript = false;
    sim->add_option("scheme", scheme_path, "scheme JSON")->required();
    sim->add_option("--demand", demand_spec, "all-distinct | seed:<k>");
    sim->add_option("--files", sim_files, "library size (default: the scheme's N)");
    sim->add_option("--packet-size", packet_size, "bytes per packet");
    sim->add_flag("--transcript", transcript, "include the message transcript");
    sim->add_option("-o,--output", sim_out, "report path");

    // tradeoff
    auto* tradeoff = app.add_subcommand("tradeoff", "memory-load corner sweep as CSV");
    int tr_k1 = 0, tr_k2 = 0, tr_l = 0, tr_n = 0;
    std::string kinds_str = "baseline,grouping,hybrid", tradeoff_out;
    bool envelope_only = false, with_float = false;
    tradeoff->add_option("K1", tr_k1)->required();
    tradeoff->add_option("K2", tr_k2)->required();
    tradeoff->add_option("L", tr_l)->required();
    tradeoff->add_option("N", tr_n)->required();
    tradeoff->add_option("--kinds", kinds_str, "comma-separated subset of baseline,grouping,hybrid");
    tradeoff->add_flag("--envelope", envelope_only, "emit the combined lower envelope instead");
    tradeoff->add_flag("--float", with_float, "append convenience decimal columns");
    tradeoff->add_option("-o,--output", tradeoff_out, "output path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (construct->parsed()) {
            if (family == "mn") {
                auto p = mn_pda(mn_k, mn_t);
                auto path = resolve_output(construct_out, "pda_mn_K" + std::to_string(mn_k) +
                                                              "_t" + std::to_string(mn_t) +
                                                              ".json");
                write_json_file(path.string(), pda_to_json(p));
                std::cout << path.string() << "\n";
            } else if (family == "partition") {
                auto fam = partition_pda(par_q, par_z, par_m);
                auto path = resolve_output(
                    construct_out, "pda_partition_q" + std::to_string(par_q) + "_z" +
                                       std::to_string(par_z) + "_m" + std::to_string(par_m) +
                                       ".json");
                write_json_file(path.string(), partition_to_json(fam));
                std::cout << path.string() << "\n";
            } else {
                throw std::invalid_argument("--family must be mn or partition");
            }
        } else if (verify->parsed()) {
            std::optional<int> t, L;
            if (verify_t >= 0) t = verify_t;
            if (verify_l >= 0) L = verify_l;
            return run_verify(verify_path, t, L);
        } else if (build->parsed()) {
            const Rational t = parse_rational(t_str);
            Macc2dScheme scheme;
            if (kind == "baseline") {
                scheme = baseline_scheme(b_k1, b_k2, b_l, t, b_n);
            } else if (kind == "grouping") {
                if (!is_integer(t)) throw std::invalid_argument("grouping needs integer t");
                scheme = grouping_scheme(b_k1, b_k2, b_l, static_cast<int>(t.numerator()), b_n);
            } else if (kind == "hybrid") {
                if (!is_integer(t)) throw std::invalid_argument("hybrid needs integer t");
                std::optional<PdaArray> outer;
                if (!outer_path.empty()) outer = pda_from_json(load_json_file(outer_path));
                scheme =
                    hybrid_scheme(b_k1, b_k2, b_l, static_cast<int>(t.numerator()), b_n, outer);
            } else {
                throw std::invalid_argument("--kind must be baseline, grouping or hybrid");
            }
            auto path = resolve_output(
                build_out, "scheme_" + kind + "_" + std::to_string(b_k1) + "x" +
                               std::to_string(b_k2) + "_L" + std::to_string(b_l) + "_t" +
                               slug(t) + "_N" + std::to_string(b_n) + ".json");
            write_json_file(path.string(), scheme_to_json(scheme));
            std::cout << path.string() << "\n";
            std::cout << "load " << to_string(scheme.load) << ", memory ratio "
                      << to_string(scheme.memory_ratio) << "\n";
        } else if (sim->parsed()) {
            json j = load_json_file(scheme_path);
            auto loaded = scheme_from_json(j);
            SimPlan plan = loaded.one_d ? make_plan(*loaded.one_d) : make_plan(*loaded.two_d);
            int files = sim_files;
            if (files == 0)
                files = loaded.one_d ? loaded.one_d->N : loaded.two_d->N;
            auto ctx = SimContext::prepare(std::move(plan), files, packet_size, 0xC0DEDCAFEULL);
            place(ctx);
            auto demand = parse_demand(demand_spec, ctx.plan, files);
            auto report = simulate(ctx, demand);
            auto path = resolve_output(
                sim_out, "report_" + fs::path(scheme_path).stem().string() + "_" +
                             (demand_spec == "all-distinct" ? "all-distinct"
                                                            : demand_spec.substr(5)) +
                             ".json");
            write_json_file(path.string(), report_to_json(report, ctx.plan, transcript));
            std::cout << path.string() << "\n";
            std::cout << "messages " << report.log.total_messages << ", load "
                      << to_string(report.log.measured_load) << ", decode "
                      << (report.all_decoded ? "ok" : "FAILED") << "\n";
            if (!report.all_decoded) return 1;
        } else if (tradeoff->parsed()) {
            std::vector<std::string> kinds;
            std::string cur;
            for (char c : kinds_str + ",") {
                if (c == ',') {
                    if (!cur.empty()) kinds.push_back(cur);
                    cur.clear();
                } else {
                    cur += c;
                }
            }
            std::vector<TradeoffPoint> points;
            if (envelope_only) {
                points = tradeoff_envelope(tr_k1, tr_k2, tr_l, tr_n, kinds);
            } else {
                for (const auto& k : kinds) {
                    std::vector<TradeoffPoint> pts;
                    if (k == "baseline") pts = baseline_corners(tr_k1, tr_k2, tr_l);
                    else if (k == "grouping") pts = grouping_corners(tr_k1, tr_k2, tr_l);
                    else if (k == "hybrid") pts = hybrid_corners(tr_k1, tr_k2, tr_l);
                    else throw std::invalid_argument("unknown kind '" + k + "'");
                    points.insert(points.end(), pts.begin(), pts.end());
                }
            }
            std::string csv = tradeoff_csv(points);
            if (with_float) {
                std::ostringstream os;
                std::istringstream is(csv);
                std::string line;
                std::getline(is, line);
                os << line << ",memory_ratio_float,load_float\n";
                for (const auto& p : points)
                    os << p.memory_ratio.numerator() << "," << p.memory_ratio.denominator() << ","
                       << p.load.numerator() << "," << p.load.denominator() << "," << p.scheme
                       << "," << to_string(p.t) << "," << to_double(p.memory_ratio) << ","
                       << to_double(p.load) << "\n";
                csv = os.str();
            }
            auto path = resolve_output(
                tradeoff_out, "tradeoff_" + std::to_string(tr_k1) + "x" + std::to_string(tr_k2) +
                                  "_L" + std::to_string(tr_l) + "_N" + std::to_string(tr_n) +
                                  ".csv");
            write_text_file(path.string(), csv);
            std::cout << path.string() << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
