#include "maccsim/json_io.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <iomanip>
#include <sstream>

#include "maccsim/util.hpp"

namespace maccsim {

json rational_to_json(const Rational& r) {
    return json{{"num", r.numerator()}, {"den", r.denominator()}};
}

Rational rational_from_json(const json& j) {
    return Rational(j.at("num").get<long long>(), j.at("den").get<long long>());
}

namespace {

const char* tag_kind_name(RowTagKind k) {
    switch (k) {
        case RowTagKind::Subset: return "subset";
        case RowTagKind::Vector: return "vector";
        default: return "none";
    }
}

RowTagKind tag_kind_from(const std::string& s) {
    if (s == "subset") return RowTagKind::Subset;
    if (s == "vector") return RowTagKind::Vector;
    return RowTagKind::None;
}

}  // namespace

json pda_to_json(const PdaArray& p) {
    json entries = json::array();
    for (int r = 0; r < p.rows; ++r) {
        json row = json::array();
        for (int c = 0; c < p.cols; ++c) {
            auto e = p.at(r, c);
            if (e.is_star()) row.push_back("*");
            else row.push_back(e.label_id());
        }
        entries.push_back(std::move(row));
    }
    json j{{"rows", p.rows}, {"cols", p.cols}, {"S", p.s}, {"entries", std::move(entries)}};
    if (p.z.has_value()) j["Z"] = *p.z;
    else j["Z"] = nullptr;
    if (p.row_tag_kind != RowTagKind::None) {
        j["row_tag_kind"] = tag_kind_name(p.row_tag_kind);
        j["row_tags"] = p.row_tags;
    }
    return j;
}

PdaArray pda_from_json(const json& j) {
    const int rows = j.at("rows").get<int>();
    const int cols = j.at("cols").get<int>();
    std::optional<int> z;
    if (j.contains("Z") && !j.at("Z").is_null()) z = j.at("Z").get<int>();
    PdaArray p(rows, cols, z, j.at("S").get<int>());

    const auto& entries = j.at("entries");
    if (static_cast<int>(entries.size()) != rows)
        throw std::invalid_argument("pda_from_json: row count mismatch");
    for (int r = 0; r < rows; ++r) {
        const auto& row = entries[r];
        if (static_cast<int>(row.size()) != cols)
            throw std::invalid_argument("pda_from_json: column count mismatch in row " +
                                        std::to_string(r + 1));
        for (int c = 0; c < cols; ++c) {
            const auto& cell = row[c];
            if (cell.is_string()) {
                if (cell.get<std::string>() != "*")
                    throw std::invalid_argument("pda_from_json: unknown cell marker");
                continue;
            }
            p.set(r, c, PdaEntry::label(cell.get<int>()));
        }
    }
    if (j.contains("row_tag_kind")) {
        p.row_tag_kind = tag_kind_from(j.at("row_tag_kind").get<std::string>());
        p.row_tags = j.at("row_tags").get<std::vector<std::vector<int>>>();
    }
    return p;
}

json partition_to_json(const PartitionFamily& f) {
    json subs = json::array();
    for (const auto& sub : f.sub_arrays) subs.push_back(pda_to_json(sub));
    return json{{"type", "partition_family"},
                {"q", f.q},
                {"z", f.z},
                {"m", f.m},
                {"sub_arrays", std::move(subs)},
                {"phi", f.label_vectors}};
}

PartitionFamily partition_from_json(const json& j) {
    PartitionFamily f;
    f.q = j.at("q").get<int>();
    f.z = j.at("z").get<int>();
    f.m = j.at("m").get<int>();
    for (const auto& sub : j.at("sub_arrays")) f.sub_arrays.push_back(pda_from_json(sub));
    f.label_vectors = j.at("phi").get<std::vector<std::vector<int>>>();
    return f;
}

json starmap_to_json(const StarMap& s) {
    return json{{"rows", s.rows}, {"cols", s.cols}, {"stars", s.star_cols}};
}

StarMap starmap_from_json(const json& j) {
    StarMap s(j.at("rows").get<int>(), j.at("cols").get<int>());
    s.star_cols = j.at("stars").get<std::vector<std::vector<int>>>();
    return s;
}

namespace {

json stargrid_to_json(const StarGrid& g) {
    json rows = json::array();
    for (int r = 0; r < g.rows; ++r) {
        json cols = json::array();
        for (int c = 0; c < g.cols; ++c)
            if (g.star(r, c)) cols.push_back(c + 1);
        rows.push_back(std::move(cols));
    }
    return json{{"rows", g.rows}, {"cols", g.cols}, {"stars", std::move(rows)}};
}

json qgrid_to_json(const QGrid& q) {
    json rows = json::array();
    for (int r = 0; r < q.rows; ++r) {
        json cols = json::array();
        for (int c = 0; c < q.cols; ++c) {
            const QCell& cell = q.at(r, c);
            switch (cell.kind) {
                case QCell::Star: cols.push_back("*"); break;
                case QCell::TypeI: cols.push_back(cell.label); break;
                case QCell::TypeII: cols.push_back(json::array({cell.s, cell.e})); break;
                case QCell::Null: cols.push_back(nullptr); break;
            }
        }
        rows.push_back(std::move(cols));
    }
    return json{{"rows", q.rows}, {"cols", q.cols}, {"entries", std::move(rows)}};
}

}  // namespace

json scheme_to_json(const Macc1dScheme& s) {
    return json{{"type", "macc1d"},
                {"params",
                 {{"K", s.K},
                  {"L", s.L},
                  {"t", s.t},
                  {"N", s.N},
                  {"memory_ratio", rational_to_json(s.memory_ratio)},
                  {"load", rational_to_json(s.load)}}},
                {"rounds", s.rounds()},
                {"source_pda", pda_to_json(s.source)},
                {"node_placement", starmap_to_json(s.node_placement)},
                {"user_retrieve", starmap_to_json(s.user_retrieve)},
                {"user_delivery", pda_to_json(s.user_delivery)}};
}

Macc1dScheme scheme_1d_from_json(const json& j) {
    const auto& params = j.at("params");
    auto scheme = make_1d_scheme(pda_from_json(j.at("source_pda")), params.at("L").get<int>(),
                                 params.at("t").get<int>(), params.at("N").get<int>());
    if (j.contains("user_delivery")) {
        auto q = pda_from_json(j.at("user_delivery"));
        if (!(q == scheme.user_delivery))
            throw std::invalid_argument("scheme_1d_from_json: stored arrays are stale");
    }
    return scheme;
}

json scheme_to_json(const Macc2dScheme& s) {
    json j{{"type", "macc2d"},
           {"kind", to_string(s.kind)},
           {"params",
            {{"K1", s.K1},
             {"K2", s.K2},
             {"L", s.L},
             {"N", s.N},
             {"t", rational_to_json(s.t)},
             {"memory_ratio", rational_to_json(s.memory_ratio)},
             {"load", rational_to_json(s.load)}}},
           {"rounds", s.rounds}};
    switch (s.kind) {
        case SchemeKind::BaselineSmall:
        case SchemeKind::BaselineMds: {
            const auto& b = s.baseline();
            j["column_scheme"] = scheme_to_json(b.column);
            if (b.mds)
                j["mds"] = {{"field", "GF(256)"},
                            {"poly", 0x11D},
                            {"k", b.mds_l},
                            {"n", b.mds_shares},
                            {"points", [&] {
                                 std::vector<int> pts(b.mds_shares);
                                 for (int i = 0; i < b.mds_shares; ++i) pts[i] = i + 1;
                                 return pts;
                             }()}};
            break;
        }
        case SchemeKind::Grouping: {
            const auto& g = s.grouping();
            json groups = json::array();
            for (int j1 = 0; j1 < s.L; ++j1)
                for (int j2 = 0; j2 < s.L; ++j2) {
                    json members = json::array();
                    for (auto& node : g.node_groups[j1][j2])
                        members.push_back(json::array({node.k1, node.k2}));
                    groups.push_back(
                        {{"j1", j1 + 1}, {"j2", j2 + 1}, {"nodes", std::move(members)}});
                }
            j["groups"] = std::move(groups);
            j["mn_pda"] = pda_to_json(g.mn);
            break;
        }
        case SchemeKind::Hybrid: {
            const auto& h = s.hybrid();
            j["outer_pda"] = pda_to_json(h.outer.source);
            j["inner_partition"] = partition_to_json(h.inner.partition);
            j["node_placement"] = stargrid_to_json(h.node_placement);
            j["user_retrieve"] = stargrid_to_json(h.user_retrieve);
            j["user_delivery"] = qgrid_to_json(h.user_delivery);
            break;
        }
    }
    return j;
}

Macc2dScheme scheme_2d_from_json(const json& j) {
    const auto& params = j.at("params");
    const int K1 = params.at("K1").get<int>();
    const int K2 = params.at("K2").get<int>();
    const int L = params.at("L").get<int>();
    const int N = params.at("N").get<int>();
    const Rational t = rational_from_json(params.at("t"));
    const std::string kind = j.at("kind").get<std::string>();

    if (kind == "baseline-small" || kind == "baseline-mds") return baseline_scheme(K1, K2, L, t, N);
    if (kind == "grouping")
        return grouping_scheme(K1, K2, L, static_cast<int>(t.numerator()), N);
    if (kind == "hybrid") {
        std::optional<PdaArray> outer;
        if (j.contains("outer_pda")) outer = pda_from_json(j.at("outer_pda"));
        return hybrid_scheme(K1, K2, L, static_cast<int>(t.numerator()), N, outer);
    }
    throw std::invalid_argument("scheme_2d_from_json: unknown kind '" + kind + "'");
}

LoadedScheme scheme_from_json(const json& j) {
    LoadedScheme out;
    const std::string type = j.at("type").get<std::string>();
    if (type == "macc1d") out.one_d = scheme_1d_from_json(j);
    else if (type == "macc2d") out.two_d = scheme_2d_from_json(j);
    else throw std::invalid_argument("scheme_from_json: unknown type '" + type + "'");
    return out;
}

json report_to_json(const SimReport& report, const SimPlan& plan, bool with_transcript) {
    json j{{"scheme", plan.description},
           {"params",
            {{"users", plan.num_users},
             {"nodes", plan.num_nodes},
             {"rounds", plan.rounds},
             {"F", plan.original_f},
             {"delivery_F", plan.delivery_f},
             {"memory_ratio", rational_to_json(plan.memory_ratio)},
             {"nominal_load", rational_to_json(plan.nominal_load)}}},
           {"demand", report.demand},
           {"per_round_messages", report.log.per_round},
           {"total_messages", report.log.total_messages},
           {"load", rational_to_json(report.log.measured_load)},
           {"all_decoded", report.all_decoded}};
    json per_user = json::array();
    for (size_t u = 0; u < report.per_user_ok.size(); ++u)
        per_user.push_back({{"user", u + 1}, {"ok", static_cast<bool>(report.per_user_ok[u])}});
    j["per_user"] = std::move(per_user);
    if (with_transcript) {
        json transcript = json::array();
        for (const auto& m : report.log.messages) {
            std::ostringstream hash;
            hash << std::hex << std::setw(16) << std::setfill('0') << m.payload_hash;
            json beneficiaries = json::array();
            for (int b : m.beneficiaries) beneficiaries.push_back(b + 1);
            transcript.push_back({{"label", m.label},
                                  {"beneficiaries", std::move(beneficiaries)},
                                  {"payload_fnv64", hash.str()}});
        }
        j["transcript"] = std::move(transcript);
    }
    return j;
}

std::string tradeoff_csv(const std::vector<TradeoffPoint>& points) {
    std::ostringstream os;
    os << "memory_ratio_num,memory_ratio_den,load_num,load_den,scheme,t\n";
    for (const auto& p : points)
        os << p.memory_ratio.numerator() << "," << p.memory_ratio.denominator() << ","
           << p.load.numerator() << "," << p.load.denominator() << "," << p.scheme << ","
           << to_string(p.t) << "\n";
    return os.str();
}

std::vector<TradeoffPoint> tradeoff_from_csv(const std::string& csv) {
    std::vector<TradeoffPoint> out;
    std::istringstream is(csv);
    std::string line;
    std::getline(is, line);  // header
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::istringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (fields.size() != 6) throw std::invalid_argument("tradeoff_from_csv: bad row");
        TradeoffPoint p;
        p.memory_ratio = Rational(std::stoll(fields[0]), std::stoll(fields[1]));
        p.load = Rational(std::stoll(fields[2]), std::stoll(fields[3]));
        p.scheme = fields[4];
        p.t = parse_rational(fields[5]);
        out.push_back(std::move(p));
    }
    return out;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

}  // namespace maccsim
