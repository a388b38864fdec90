#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "maccsim/json_io.hpp"
#include "maccsim/macc2d.hpp"
#include "maccsim/mds.hpp"
#include "maccsim/sim.hpp"

namespace py = pybind11;
using namespace maccsim;

namespace {

py::object to_fraction(const Rational& r) {
    static py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(r.numerator(), r.denominator());
}

Rational rational_from_py(const py::object& obj) {
    if (py::isinstance<py::int_>(obj)) return Rational(obj.cast<long long>());
    if (py::isinstance<py::str>(obj)) return parse_rational(obj.cast<std::string>());
    if (py::hasattr(obj, "numerator") && py::hasattr(obj, "denominator"))
        return Rational(obj.attr("numerator").cast<long long>(),
                        obj.attr("denominator").cast<long long>());
    throw py::type_error("expected int, 'a/b' string, or Fraction");
}

py::object entry_obj(const PdaArray& p, int row, int col) {
    auto e = p.at(row, col);
    if (e.is_star()) return py::none();
    return py::int_(e.label_id());
}

py::dict report_dict(const PdaReport& rep) {
    py::dict d;
    d["c1_ok"] = rep.c1_ok;
    d["c2_ok"] = rep.c2_ok;
    d["c3_ok"] = rep.c3_ok;
    d["c4_ok"] = rep.c4_ok ? py::object(py::bool_(*rep.c4_ok)) : py::none();
    d["c5_ok"] = rep.c5_ok ? py::object(py::bool_(*rep.c5_ok)) : py::none();
    d["all_ok"] = rep.all_ok();
    d["gain_histogram"] = rep.gain_histogram;
    py::list violations;
    for (const auto& v : rep.violations) {
        py::dict vd;
        vd["condition"] = std::string(1, v.condition);
        vd["detail"] = v.detail;
        vd["cells"] = v.cells;
        violations.append(vd);
    }
    d["violations"] = violations;
    return d;
}

py::list points_list(const std::vector<TradeoffPoint>& pts) {
    py::list out;
    for (const auto& p : pts) {
        py::dict d;
        d["memory_ratio"] = to_fraction(p.memory_ratio);
        d["load"] = to_fraction(p.load);
        d["scheme"] = p.scheme;
        d["t"] = to_fraction(p.t);
        out.append(d);
    }
    return out;
}

std::string simulate_json(const SimPlan& plan, int files, const std::string& demand_spec,
                          int packet_size, std::uint64_t seed, bool transcript) {
    auto ctx = SimContext::prepare(plan, files, packet_size, seed);
    place(ctx);
    std::vector<int> demand;
    if (demand_spec == "all-distinct") demand = all_distinct_demand(ctx.plan, files);
    else if (demand_spec.rfind("seed:", 0) == 0)
        demand = seeded_demand(ctx.plan, files, std::stoull(demand_spec.substr(5)));
    else throw std::invalid_argument("demand must be 'all-distinct' or 'seed:<k>'");
    auto rep = simulate(ctx, demand);
    return report_to_json(rep, ctx.plan, transcript).dump();
}

}  // namespace

PYBIND11_MODULE(_maccsim, m) {
    m.doc() = "coded caching arrays, multi-access schemes, and the bit-exact simulator";

    py::class_<PdaArray>(m, "PdaArray")
        .def_readonly("rows", &PdaArray::rows)
        .def_readonly("cols", &PdaArray::cols)
        .def_property_readonly("z",
                               [](const PdaArray& p) {
                                   return p.z ? py::object(py::int_(*p.z)) : py::none();
                               })
        .def_readonly("s", &PdaArray::s)
        .def("entry", &entry_obj, py::arg("row"), py::arg("col"),
             "None for a star, the label id otherwise; 0-based indices")
        .def_property_readonly("row_tags", [](const PdaArray& p) { return p.row_tags; })
        .def("to_json", [](const PdaArray& p) { return pda_to_json(p).dump(); })
        .def("__eq__", [](const PdaArray& a, const PdaArray& b) { return a == b; })
        .def("__repr__", [](const PdaArray& p) {
            return "PdaArray(" + std::to_string(p.rows) + "x" + std::to_string(p.cols) + ", S=" +
                   std::to_string(p.s) + ")";
        });

    py::class_<PartitionFamily>(m, "PartitionFamily")
        .def_readonly("q", &PartitionFamily::q)
        .def_readonly("z", &PartitionFamily::z)
        .def_readonly("m", &PartitionFamily::m)
        .def("sub_array", [](const PartitionFamily& f, int i) { return f.sub_arrays.at(i); })
        .def("label_vector",
             [](const PartitionFamily& f, int label) { return f.label_vectors.at(label - 1); })
        .def("label_of_vector", &PartitionFamily::label_of_vector)
        .def("tag_star_col", &PartitionFamily::tag_star_col)
        .def("combined", &PartitionFamily::combined)
        .def("to_json", [](const PartitionFamily& f) { return partition_to_json(f).dump(); });

    py::class_<Macc1dScheme>(m, "Macc1dScheme")
        .def_readonly("K", &Macc1dScheme::K)
        .def_readonly("L", &Macc1dScheme::L)
        .def_readonly("t", &Macc1dScheme::t)
        .def_readonly("N", &Macc1dScheme::N)
        .def_readonly("source", &Macc1dScheme::source)
        .def_readonly("user_delivery", &Macc1dScheme::user_delivery)
        .def_property_readonly("load", [](const Macc1dScheme& s) { return to_fraction(s.load); })
        .def_property_readonly(
            "memory_ratio", [](const Macc1dScheme& s) { return to_fraction(s.memory_ratio); })
        .def("to_json", [](const Macc1dScheme& s) { return scheme_to_json(s).dump(); })
        .def("simulate", [](const Macc1dScheme& s, const std::string& demand, int files,
                            int packet_size, std::uint64_t seed, bool transcript) {
                 return simulate_json(make_plan(s), files ? files : s.N, demand, packet_size, seed,
                                      transcript);
             },
             py::arg("demand") = "all-distinct", py::arg("files") = 0,
             py::arg("packet_size") = 64, py::arg("seed") = 1, py::arg("transcript") = false);

    py::class_<Macc2dScheme>(m, "Macc2dScheme")
        .def_property_readonly("kind",
                               [](const Macc2dScheme& s) { return to_string(s.kind); })
        .def_readonly("K1", &Macc2dScheme::K1)
        .def_readonly("K2", &Macc2dScheme::K2)
        .def_readonly("L", &Macc2dScheme::L)
        .def_readonly("N", &Macc2dScheme::N)
        .def_readonly("rounds", &Macc2dScheme::rounds)
        .def_property_readonly("t", [](const Macc2dScheme& s) { return to_fraction(s.t); })
        .def_property_readonly("load", [](const Macc2dScheme& s) { return to_fraction(s.load); })
        .def_property_readonly(
            "memory_ratio", [](const Macc2dScheme& s) { return to_fraction(s.memory_ratio); })
        .def("to_json", [](const Macc2dScheme& s) { return scheme_to_json(s).dump(); })
        .def("simulate", [](const Macc2dScheme& s, const std::string& demand, int files,
                            int packet_size, std::uint64_t seed, bool transcript) {
                 return simulate_json(make_plan(s), files ? files : s.N, demand, packet_size, seed,
                                      transcript);
             },
             py::arg("demand") = "all-distinct", py::arg("files") = 0,
             py::arg("packet_size") = 64, py::arg("seed") = 1, py::arg("transcript") = false);

    m.def("mn_pda", &mn_pda, py::arg("K"), py::arg("t"));
    m.def("partition_pda", &partition_pda, py::arg("q"), py::arg("z"), py::arg("m"));
    m.def("verify_pda",
          [](const PdaArray& p, py::object t, py::object L) {
              std::optional<int> ot, ol;
              if (!t.is_none()) ot = t.cast<int>();
              if (!L.is_none()) ol = L.cast<int>();
              return report_dict(verify_pda(p, ot, ol));
          },
          py::arg("pda"), py::arg("t") = py::none(), py::arg("L") = py::none());
    m.def("gain_profile", &gain_profile);
    m.def("pda_from_json",
          [](const std::string& text) { return pda_from_json(json::parse(text)); });

    m.def("make_1d_scheme", &make_1d_scheme, py::arg("pda"), py::arg("L"), py::arg("t"),
          py::arg("N"));
    m.def("cwlzc_scheme", &cwlzc_scheme, py::arg("K"), py::arg("L"), py::arg("t"), py::arg("N"));

    m.def("baseline_scheme",
          [](int K1, int K2, int L, const py::object& t, int N) {
              return baseline_scheme(K1, K2, L, rational_from_py(t), N);
          },
          py::arg("K1"), py::arg("K2"), py::arg("L"), py::arg("t"), py::arg("N"));
    m.def("grouping_scheme", &grouping_scheme, py::arg("K1"), py::arg("K2"), py::arg("L"),
          py::arg("t"), py::arg("N"));
    m.def("hybrid_scheme", &hybrid_scheme, py::arg("K1"), py::arg("K2"), py::arg("L"),
          py::arg("t"), py::arg("N"), py::arg("outer_pda") = std::nullopt);

    m.def("baseline_load", [](int K1, int K2, int L, const py::object& t) {
        return to_fraction(baseline_load(K1, K2, L, rational_from_py(t)));
    });
    m.def("grouping_load", [](int K1, int K2, int L, const py::object& t) {
        return to_fraction(grouping_load(K1, K2, L, rational_from_py(t)));
    });
    m.def("hybrid_load", [](int K1, int K2, int L, const py::object& t) {
        return to_fraction(hybrid_load(K1, K2, L, rational_from_py(t)));
    });

    m.def("baseline_corners",
          [](int K1, int K2, int L) { return points_list(baseline_corners(K1, K2, L)); });
    m.def("grouping_corners",
          [](int K1, int K2, int L) { return points_list(grouping_corners(K1, K2, L)); });
    m.def("hybrid_corners",
          [](int K1, int K2, int L) { return points_list(hybrid_corners(K1, K2, L)); });
    m.def("tradeoff_envelope",
          [](int K1, int K2, int L, int N, const std::vector<std::string>& kinds) {
              return points_list(tradeoff_envelope(K1, K2, L, N, kinds));
          });
    m.def("tradeoff_csv", [](int K1, int K2, int L, const std::vector<std::string>& kinds) {
        std::vector<TradeoffPoint> pts;
        for (const auto& kind : kinds) {
            std::vector<TradeoffPoint> part;
            if (kind == "baseline") part = baseline_corners(K1, K2, L);
            else if (kind == "grouping") part = grouping_corners(K1, K2, L);
            else if (kind == "hybrid") part = hybrid_corners(K1, K2, L);
            else throw std::invalid_argument("unknown kind '" + kind + "'");
            pts.insert(pts.end(), part.begin(), part.end());
        }
        return tradeoff_csv(pts);
    });

    m.def("simulate_scheme_json",
          [](const std::string& text, const std::string& demand, int files, int packet_size,
             std::uint64_t seed, bool transcript) {
              auto loaded = scheme_from_json(json::parse(text));
              SimPlan plan = loaded.one_d ? make_plan(*loaded.one_d) : make_plan(*loaded.two_d);
              int n = files ? files : (loaded.one_d ? loaded.one_d->N : loaded.two_d->N);
              return simulate_json(plan, n, demand, packet_size, seed, transcript);
          },
          py::arg("scheme_json"), py::arg("demand") = "all-distinct", py::arg("files") = 0,
          py::arg("packet_size") = 64, py::arg("seed") = 1, py::arg("transcript") = false);

    m.def("accessible_nodes", [](int k1, int k2, int K1, int K2, int L) {
        std::vector<std::pair<int, int>> out;
        for (auto g : accessible_nodes({k1, k2}, K1, K2, L)) out.push_back({g.k1, g.k2});
        return out;
    });

    m.def("mds_encode",
          [](const std::vector<py::bytes>& sources, int n) {
              std::vector<std::vector<std::uint8_t>> src;
              for (const auto& b : sources) {
                  std::string s = b;
                  src.emplace_back(s.begin(), s.end());
              }
              MdsCode code(static_cast<int>(src.size()), n);
              std::vector<py::bytes> out;
              for (auto& share : code.encode(src))
                  out.emplace_back(reinterpret_cast<const char*>(share.data()), share.size());
              return out;
          },
          py::arg("sources"), py::arg("n"));
    m.def("mds_decode",
          [](const std::vector<int>& ids, const std::vector<py::bytes>& shares, int k, int n) {
              std::vector<std::vector<std::uint8_t>> sh;
              for (const auto& b : shares) {
                  std::string s = b;
                  sh.emplace_back(s.begin(), s.end());
              }
              MdsCode code(k, n);
              std::vector<py::bytes> out;
              for (auto& src : code.decode(ids, sh))
                  out.emplace_back(reinterpret_cast<const char*>(src.data()), src.size());
              return out;
          },
          py::arg("share_ids"), py::arg("shares"), py::arg("k"), py::arg("n"));
}
