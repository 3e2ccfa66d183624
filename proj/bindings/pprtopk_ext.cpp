#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pprtopk/bounds.hpp"
#include "pprtopk/disambig.hpp"
#include "pprtopk/exact.hpp"
#include "pprtopk/graph.hpp"
#include "pprtopk/mc.hpp"
#include "pprtopk/topk.hpp"
#include "pprtopk/version.hpp"

namespace py = pybind11;
using namespace pprtopk;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Monte Carlo top-k personalized PageRank";
  m.attr("__version__") = kVersion;

  py::enum_<DanglingPolicy>(m, "DanglingPolicy")
      .value("self_loop", DanglingPolicy::self_loop)
      .value("jump_to_seed", DanglingPolicy::jump_to_seed);
  py::enum_<EdgeFilter>(m, "EdgeFilter")
      .value("all", EdgeFilter::all)
      .value("cross_host_only", EdgeFilter::cross_host_only);
  py::enum_<McMethod>(m, "McMethod")
      .value("end_point", McMethod::end_point)
      .value("complete_path", McMethod::complete_path);
  py::enum_<OrderStatMode>(m, "OrderStatMode")
      .value("sum", OrderStatMode::sum)
      .value("beta", OrderStatMode::beta);
  py::enum_<TopKKind>(m, "TopKKind")
      .value("list", TopKKind::list)
      .value("basket", TopKKind::basket);
  py::enum_<MergeProvenance>(m, "MergeProvenance")
      .value("structure", MergeProvenance::structure)
      .value("content", MergeProvenance::content);

  py::class_<WalkConfig>(m, "WalkConfig")
      .def(py::init<>())
      .def_readwrite("damping", &WalkConfig::damping)
      .def_readwrite("seed_node", &WalkConfig::seed_node)
      .def_readwrite("dangling_policy", &WalkConfig::dangling_policy)
      .def_readwrite("edge_filter", &WalkConfig::edge_filter);

  py::class_<Graph>(m, "Graph")
      .def_static("from_edges", &Graph::from_edges, py::arg("node_count"),
                  py::arg("edges"))
      .def_property_readonly("node_count", &Graph::node_count)
      .def_property_readonly("edge_count", &Graph::edge_count)
      .def("out_edges",
           [](const Graph& g, NodeId v) {
             auto span = g.out_edges(v);
             return std::vector<NodeId>(span.begin(), span.end());
           })
      .def("set_hosts", &Graph::set_hosts)
      .def("set_labels", &Graph::set_labels)
      .def_property_readonly("has_hosts", &Graph::has_hosts);

  m.def("load_edge_list", &load_edge_list, py::arg("path"),
        py::arg("n_hint") = std::nullopt);
  m.def("write_edge_list", &write_edge_list);

  py::class_<PprVector>(m, "PprVector")
      .def_readonly("seed", &PprVector::seed)
      .def_readonly("damping", &PprVector::damping)
      .def_readonly("scores", &PprVector::scores);

  m.def(
      "solve_ppr",
      [](const Graph& g, const WalkConfig& cfg, double tol, int max_iters) {
        return solve_ppr(g, cfg, tol, max_iters);
      },
      py::arg("graph"), py::arg("config"), py::arg("tol") = 1e-12,
      py::arg("max_iters") = 0);
  m.def("resolvent_entry",
        [](const Graph& g, const WalkConfig& cfg, NodeId i, NodeId j,
           double tol) { return resolvent_entry(g, cfg, i, j, tol).value; },
        py::arg("graph"), py::arg("config"), py::arg("i"), py::arg("j"),
        py::arg("tol") = 1e-12);

  py::class_<WalkOutcome>(m, "WalkOutcome")
      .def_readonly("method", &WalkOutcome::method)
      .def_readonly("runs", &WalkOutcome::runs)
      .def_readonly("rng_seed", &WalkOutcome::rng_seed)
      .def_readonly("counts", &WalkOutcome::counts)
      .def("count", &WalkOutcome::count);

  py::class_<MCEstimate>(m, "MCEstimate")
      .def_readonly("method", &MCEstimate::method)
      .def_readonly("runs", &MCEstimate::runs)
      .def_readonly("pi_hat", &MCEstimate::pi_hat)
      .def("at", &MCEstimate::at);

  m.def("run_end_point", &run_end_point, py::arg("graph"), py::arg("config"),
        py::arg("m"), py::arg("rng_seed"), py::arg("threads") = 0);
  m.def("run_complete_path", &run_complete_path, py::arg("graph"),
        py::arg("config"), py::arg("m"), py::arg("rng_seed"),
        py::arg("threads") = 0);
  m.def("estimate", &estimate, py::arg("outcome"), py::arg("config"));

  py::class_<AdaptiveResult>(m, "AdaptiveResult")
      .def_readonly("outcome", &AdaptiveResult::outcome)
      .def_readonly("stopped_at_m", &AdaptiveResult::stopped_at_m)
      .def_readonly("cap_reached", &AdaptiveResult::cap_reached);

  m.def("run_adaptive", &run_adaptive, py::arg("graph"), py::arg("config"),
        py::arg("k"), py::arg("gap_d"), py::arg("batch"), py::arg("m_cap"),
        py::arg("rng_seed"), py::arg("method") = McMethod::end_point,
        py::arg("threads") = 0);

  py::class_<TopKEntry>(m, "TopKEntry")
      .def_readonly("id", &TopKEntry::id)
      .def_readonly("score", &TopKEntry::score);
  py::class_<TopKReport>(m, "TopKReport")
      .def_readonly("kind", &TopKReport::kind)
      .def_readonly("k_requested", &TopKReport::k_requested)
      .def_readonly("entries", &TopKReport::entries)
      .def_readonly("truncated", &TopKReport::truncated)
      .def("ids", &TopKReport::ids);

  m.def("top_k",
        py::overload_cast<const PprVector&, NodeId>(&top_k),
        py::arg("ppr"), py::arg("k"));
  m.def("top_k",
        py::overload_cast<const MCEstimate&, NodeId>(&top_k),
        py::arg("estimate"), py::arg("k"));

  py::class_<BasketComparison>(m, "BasketComparison")
      .def_readonly("k", &BasketComparison::k)
      .def_readonly("correct", &BasketComparison::correct)
      .def_readonly("erroneous", &BasketComparison::erroneous)
      .def_readonly("list_correct_prefix",
                    &BasketComparison::list_correct_prefix);
  m.def("compare_baskets", &compare_baskets);
  m.def("satisfies_relaxation", &satisfies_relaxation);

  py::class_<CurveRow>(m, "CurveRow")
      .def_readonly("m", &CurveRow::m)
      .def_readonly("mean_correct", &CurveRow::mean_correct)
      .def_readonly("std_correct", &CurveRow::std_correct);
  m.def(
      "convergence_curve",
      [](const Graph& g, const WalkConfig& cfg, McMethod method, NodeId k,
         const std::vector<std::uint64_t>& grid, std::uint32_t repeats,
         std::uint64_t rng_seed, int threads) {
        return convergence_curve(g, cfg, method, k, grid, repeats, rng_seed,
                                 threads);
      },
      py::arg("graph"), py::arg("config"), py::arg("method"), py::arg("k"),
      py::arg("m_grid"), py::arg("repeats"), py::arg("rng_seed"),
      py::arg("threads") = 0);

  m.def("sigma_end_point", &sigma_end_point, py::arg("pi_k"), py::arg("m"));
  m.def("sigma_complete_path", &sigma_complete_path, py::arg("pi_k_of_s"),
        py::arg("pi_k_of_k"), py::arg("c"), py::arg("m"),
        py::arg("approximate") = false);

  py::class_<CovEntry>(m, "CovEntry")
      .def_readonly("s", &CovEntry::s)
      .def_readonly("i", &CovEntry::i)
      .def_readonly("j", &CovEntry::j)
      .def_readonly("value", &CovEntry::value);
  m.def("covariance_entry", &covariance_entry, py::arg("graph"),
        py::arg("config"), py::arg("i"), py::arg("j"), py::arg("tol") = 1e-12);

  m.def("pairwise_misrank_exact", &pairwise_misrank_exact, py::arg("pi_i"),
        py::arg("pi_j"), py::arg("m"));
  m.def("pairwise_misrank_clt", &pairwise_misrank_clt, py::arg("mean_i"),
        py::arg("mean_j"), py::arg("var_i"), py::arg("var_j"),
        py::arg("cov_ij"), py::arg("m"));
  m.def("multinomial_rho", &multinomial_rho);
  m.def("pairwise_misrank_clt_multinomial", &pairwise_misrank_clt_multinomial,
        py::arg("pi_i"), py::arg("pi_j"), py::arg("m"));

  py::enum_<MisrankKind>(m, "MisrankKind")
      .value("pairwise_exact_multinomial",
             MisrankKind::pairwise_exact_multinomial)
      .value("pairwise_clt", MisrankKind::pairwise_clt)
      .value("basket_bonferroni", MisrankKind::basket_bonferroni)
      .value("list_bonferroni", MisrankKind::list_bonferroni);
  py::class_<MisrankBound>(m, "MisrankBound")
      .def_readonly("kind", &MisrankBound::kind)
      .def_readonly("value", &MisrankBound::value)
      .def_readonly("raw", &MisrankBound::raw)
      .def_readonly("k", &MisrankBound::k)
      .def_readonly("m", &MisrankBound::m)
      .def_readonly("j_star", &MisrankBound::j_star);

  m.def(
      "basket_misrank_bound",
      [](const std::vector<double>& pi, NodeId k, std::uint64_t m,
         std::optional<NodeId> j_star) {
        return basket_misrank_bound(pi, k, m, j_star);
      },
      py::arg("pi_sorted"), py::arg("k"), py::arg("m"),
      py::arg("j_star") = std::nullopt);
  m.def(
      "list_misrank_bound",
      [](const std::vector<double>& pi, NodeId k, std::uint64_t m,
         std::optional<NodeId> j_star) {
        return list_misrank_bound(pi, k, m, j_star);
      },
      py::arg("pi_sorted"), py::arg("k"), py::arg("m"),
      py::arg("j_star") = std::nullopt);

  m.def("order_statistic_cdf", &order_statistic_cdf, py::arg("p_head"),
        py::arg("s"), py::arg("m"), py::arg("mode"));
  m.def("hit_probability", &hit_probability, py::arg("pi_j"), py::arg("r"),
        py::arg("m"));
  m.def(
      "poisson_mu",
      [](const std::vector<double>& pi_tail, double m, std::uint64_t y) {
        return poisson_mu(pi_tail, m, y);
      },
      py::arg("pi_tail"), py::arg("m"), py::arg("y"));
  m.def(
      "expected_m1",
      [](const std::vector<double>& pi_sorted, NodeId k, double m) {
        return expected_m1(pi_sorted, k, m);
      },
      py::arg("pi_sorted"), py::arg("k"), py::arg("m"));

  py::class_<RecommendedM>(m, "RecommendedM")
      .def_readonly("m", &RecommendedM::m)
      .def_readonly("y", &RecommendedM::y)
      .def_readonly("mu_y", &RecommendedM::mu_y)
      .def_readonly("condition_i_holds", &RecommendedM::condition_i_holds)
      .def_readonly("epsilon_exceeds_1_over_y",
                    &RecommendedM::epsilon_exceeds_1_over_y);
  m.def("recommended_m", &recommended_m, py::arg("a"), py::arg("epsilon"),
        py::arg("alpha"), py::arg("k"), py::arg("pi_k_plus_1"));
  m.def("expected_m0_empirical", &expected_m0_empirical, py::arg("graph"),
        py::arg("config"), py::arg("k"), py::arg("m"), py::arg("trials"),
        py::arg("rng_seed"), py::arg("threads") = 0);

  py::class_<CorpusPage>(m, "CorpusPage")
      .def_readonly("id", &CorpusPage::id)
      .def_readonly("host", &CorpusPage::host)
      .def_readonly("tokens", &CorpusPage::tokens)
      .def_readonly("is_person_page", &CorpusPage::is_person_page)
      .def_readonly("outlinks", &CorpusPage::outlinks);
  py::class_<Corpus>(m, "Corpus")
      .def_readonly("pages", &Corpus::pages)
      .def_readonly("graph", &Corpus::graph)
      .def("person_pages", &Corpus::person_pages);
  m.def("load_corpus_jsonl", &load_corpus_jsonl);
  m.def("preprocess_text", &preprocess_text);

  py::class_<PageProfile>(m, "PageProfile")
      .def_readonly("page", &PageProfile::page)
      .def_readonly("terms", &PageProfile::terms);
  m.def("cosine_similarity", &cosine_similarity);
  m.def(
      "reweight_profile",
      [](const CorpusPage& person, const std::vector<CorpusPage>& related) {
        std::vector<const CorpusPage*> ptrs;
        ptrs.reserve(related.size());
        for (const auto& r : related) ptrs.push_back(&r);
        return reweight_profile(person, ptrs);
      },
      py::arg("person"), py::arg("related"));
  m.def("related_pages", &related_pages, py::arg("graph"), py::arg("page"),
        py::arg("k"), py::arg("damping"), py::arg("m"), py::arg("rng_seed"));

  py::class_<Clustering>(m, "Clustering")
      .def_readonly("clusters", &Clustering::clusters)
      .def_readonly("provenance", &Clustering::provenance);
  m.def("structure_cluster", &structure_cluster, py::arg("related"),
        py::arg("min_overlap") = 1);
  m.def("content_cluster", &content_cluster, py::arg("base"),
        py::arg("profiles"), py::arg("threshold"));

  py::class_<DisambigParams>(m, "DisambigParams")
      .def(py::init<>())
      .def_readwrite("related_k", &DisambigParams::related_k)
      .def_readwrite("damping", &DisambigParams::damping)
      .def_readwrite("walks_m", &DisambigParams::walks_m)
      .def_readwrite("hac_threshold", &DisambigParams::hac_threshold)
      .def_readwrite("min_overlap", &DisambigParams::min_overlap)
      .def_readwrite("rng_seed", &DisambigParams::rng_seed)
      .def_readwrite("content_stage", &DisambigParams::content_stage);
  py::class_<DisambigResult>(m, "DisambigResult")
      .def_readonly("clustering", &DisambigResult::clustering)
      .def_readonly("related", &DisambigResult::related)
      .def_readonly("profiles", &DisambigResult::profiles);
  m.def("run_disambig", &run_disambig, py::arg("corpus"), py::arg("params"));
}
