#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include "support/oracles.hpp"
#include "tlgcn/dynamic_graph.hpp"
#include "tlgcn/errors.hpp"
#include "tlgcn/serialize.hpp"

using namespace tlgcn;
using namespace tlgcn::testing;

namespace {

EdgeList edges_from(std::initializer_list<TemporalEdge> list, std::size_t n) {
  EdgeList e;
  e.edges = list;
  for (std::size_t k = 0; k < n; ++k) e.original_id.push_back(static_cast<std::int64_t>(k));
  return e;
}

}  // namespace

TEST_CASE("parse_edge_list handles csv, tsv and whitespace") {
  auto csv = parse_edge_list("0,1,5,100\n1,2,-3,200\n0,2,1,300\n");
  CHECK(csv.edges.size() == 3);
  CHECK(csv.node_count() == 3);
  CHECK(csv.edges[1].weight == -3.0);
  CHECK(csv.edges[2].timestamp == 300);

  auto tsv = parse_edge_list("0\t1\t5\t100\n", EdgeFormat::Tsv);
  CHECK(tsv.edges.size() == 1);

  auto ws = parse_edge_list("7 9 2.5 10\n9 7 1 20\n");
  CHECK(ws.node_count() == 2);
  CHECK(ws.edges[0].src == 0);  // ids remapped in first-appearance order
  CHECK(ws.edges[0].dst == 1);
  CHECK(ws.edges[1].src == 1);
}

TEST_CASE("parse_edge_list skips comments and a single header row") {
  auto e = parse_edge_list("# comment\n% other comment\nsrc,dst,w,ts\n3,4,1,0\n");
  CHECK(e.edges.size() == 1);
  CHECK(e.original_id[0] == 3);
}

TEST_CASE("parse_edge_list reports the offending line") {
  try {
    parse_edge_list("0,1,5,100\n0,1,oops,200\n");
    FAIL("expected ParseError");
  } catch (const ParseError& err) {
    CHECK(err.line() == 2);
  }
  CHECK_THROWS_AS(parse_edge_list("# nothing here\n"), EmptyInputError);
  CHECK_THROWS_AS(parse_edge_list(""), EmptyInputError);
}

TEST_CASE("load_edge_list round-trips through a file") {
  const auto path = std::filesystem::temp_directory_path() / "tlgcn_edges_test.csv";
  {
    std::ofstream out(path);
    out << "10,20,1.5,5\n20,30,2.5,9\n";
  }
  auto e = load_edge_list(path.string());
  CHECK(e.edges.size() == 2);
  CHECK(e.original_id == std::vector<std::int64_t>{10, 20, 30});
  std::filesystem::remove(path);

  CHECK_THROWS(load_edge_list("/nonexistent/tlgcn.csv"));
}

TEST_CASE("bin_snapshots maps timestamps to equal-width slots") {
  auto e = edges_from({{0, 1, 1.0, 0}, {1, 2, 1.0, 50}, {0, 2, 1.0, 100}}, 3);
  auto g = bin_snapshots(e, 2, Aggregator::Last);
  REQUIRE(g.observations.size() == 3);
  CHECK(g.observations[0].t == 0);
  CHECK(g.observations[1].t == 0);
  CHECK(g.observations[2].t == 1);
  CHECK(g.observations[2].i == 0);
  CHECK(g.observations[2].j == 2);

  auto single = bin_snapshots(edges_from({{0, 1, 4.0, 77}}, 2), 1, Aggregator::Sum);
  CHECK(single.observations.size() == 1);
  CHECK(single.observations[0].t == 0);

  CHECK_THROWS_AS(bin_snapshots(e, 0, Aggregator::Last), std::invalid_argument);
}

TEST_CASE("binning is monotone in the timestamp") {
  std::uint64_t rng = 5;
  for (int rep = 0; rep < 20; ++rep) {
    const std::int64_t min_ts = static_cast<std::int64_t>(next_u64(rng) % 1000);
    const std::int64_t max_ts = min_ts + static_cast<std::int64_t>(next_u64(rng) % 100000);
    const std::size_t t_slots = 1 + next_u64(rng) % 8;
    std::size_t prev = 0;
    for (std::int64_t ts = min_ts; ts <= max_ts; ts += std::max<std::int64_t>(1, (max_ts - min_ts) / 37 + 1)) {
      const std::size_t slot = bin_slot(ts, min_ts, max_ts, t_slots);
      CHECK(slot >= prev);
      CHECK(slot < t_slots);
      prev = slot;
    }
    CHECK(bin_slot(max_ts, min_ts, max_ts, t_slots) == t_slots - 1);
  }
}

TEST_CASE("duplicate pairs within one slot collapse by aggregator") {
  auto e = edges_from({{0, 1, 2.0, 10}, {0, 1, 4.0, 11}}, 2);
  CHECK(bin_snapshots(e, 1, Aggregator::Mean).observations[0].y == 3.0);
  CHECK(bin_snapshots(e, 1, Aggregator::Sum).observations[0].y == 6.0);
  CHECK(bin_snapshots(e, 1, Aggregator::Last).observations[0].y == 4.0);
  CHECK(bin_snapshots(e, 1, Aggregator::Mean).observations.size() == 1);
}

TEST_CASE("observation count equals distinct (i,j,slot) triples") {
  std::uint64_t rng = 17;
  std::vector<TemporalEdge> edges;
  for (int k = 0; k < 200; ++k) {
    edges.push_back({static_cast<std::uint32_t>(next_u64(rng) % 6),
                     static_cast<std::uint32_t>(next_u64(rng) % 6), uniform(rng, -5, 5),
                     static_cast<std::int64_t>(next_u64(rng) % 1000)});
  }
  EdgeList e;
  e.edges = edges;
  for (int k = 0; k < 6; ++k) e.original_id.push_back(k);

  auto g = bin_snapshots(e, 4, Aggregator::Sum);
  std::set<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> distinct;
  std::int64_t lo = edges[0].timestamp, hi = edges[0].timestamp;
  for (const auto& ed : edges) {
    lo = std::min(lo, ed.timestamp);
    hi = std::max(hi, ed.timestamp);
  }
  for (const auto& ed : edges) {
    distinct.insert({ed.src, ed.dst, static_cast<std::uint32_t>(bin_slot(ed.timestamp, lo, hi, 4))});
  }
  CHECK(g.observations.size() == distinct.size());
  CHECK(g.adjacency.nnz() == distinct.size());
}

TEST_CASE("symmetrize_and_normalize hand cases") {
  SUBCASE("single isolated node") {
    DynamicGraph g;
    g.n = 1;
    g.t_slots = 1;
    g.adjacency = SparseSnapshots(1, 1);
    auto a = symmetrize_and_normalize(g);
    CHECK(a.to_dense().at(0, 0, 0) == 1.0);
  }

  SUBCASE("two nodes, one edge") {
    auto e = edges_from({{0, 1, 1.0, 0}}, 2);
    auto g = bin_snapshots(e, 1, Aggregator::Last);
    auto a = symmetrize_and_normalize(g).to_dense();
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) {
        CHECK(a.at(i, j, 0) == doctest::Approx(0.5).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("normalized slices are symmetric with spectrum inside [-1, 1]") {
  std::uint64_t rng = 23;
  for (int rep = 0; rep < 12; ++rep) {
    const std::size_t n = 2 + next_u64(rng) % 5;  // up to 6 nodes
    std::vector<TemporalEdge> edges;
    const int count = 3 + static_cast<int>(next_u64(rng) % 12);
    for (int k = 0; k < count; ++k) {
      edges.push_back({static_cast<std::uint32_t>(next_u64(rng) % n),
                       static_cast<std::uint32_t>(next_u64(rng) % n), 1.0,
                       static_cast<std::int64_t>(next_u64(rng) % 50)});
    }
    EdgeList e;
    e.edges = edges;
    for (std::size_t k = 0; k < n; ++k) e.original_id.push_back(static_cast<std::int64_t>(k));
    auto g = bin_snapshots(e, 2, Aggregator::Last);
    auto a = symmetrize_and_normalize(g);
    auto dense = a.to_dense();

    for (std::size_t t = 0; t < 2; ++t) {
      std::vector<double> mat(n * n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          mat[i * n + j] = dense.at(i, j, t);
          CHECK(std::fabs(dense.at(i, j, t) - dense.at(j, i, t)) <= 1e-12);
        }
      }
      auto eig = oracle_symmetric_eigenvalues(mat, n);
      CHECK(eig.front() >= -1.0 - 1e-10);
      CHECK(eig.back() <= 1.0 + 1e-10);
    }
  }
}

TEST_CASE("unit diagonal exactly for isolated nodes, 1/d otherwise") {
  auto e = edges_from({{0, 1, 1.0, 0}}, 3);  // node 2 isolated
  auto g = bin_snapshots(e, 1, Aggregator::Last);
  auto a = symmetrize_and_normalize(g).to_dense();
  CHECK(a.at(2, 2, 0) == 1.0);
  CHECK(a.at(0, 0, 0) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("split_observations proportions and determinism") {
  auto make_graph = [](std::size_t obs_count) {
    DynamicGraph g;
    g.n = 4;
    g.t_slots = 1;
    g.adjacency = SparseSnapshots(4, 1);
    for (std::size_t k = 0; k < obs_count; ++k) {
      g.observations.push_back({0, 1, 0, static_cast<double>(k)});
    }
    return g;
  };

  auto s10 = split_observations(make_graph(10), 42);
  CHECK(s10.train.size() == 8);
  CHECK(s10.validation.size() == 1);
  CHECK(s10.test.size() == 1);

  auto s100 = split_observations(make_graph(100), 42);
  CHECK(s100.train.size() == 80);
  CHECK(s100.validation.size() == 10);
  CHECK(s100.test.size() == 10);

  auto again = split_observations(make_graph(100), 42);
  CHECK(again.train == s100.train);
  CHECK(again.validation == s100.validation);
  CHECK(again.test == s100.test);

  auto other = split_observations(make_graph(100), 43);
  CHECK(other.train != s100.train);

  CHECK_THROWS_AS(split_observations(make_graph(9), 1), std::invalid_argument);

  // partition property
  std::set<std::uint32_t> all;
  for (auto v : s100.train) all.insert(v);
  for (auto v : s100.validation) all.insert(v);
  for (auto v : s100.test) all.insert(v);
  CHECK(all.size() == 100);
  CHECK(*all.rbegin() == 99);
}

TEST_CASE("mask_adjacency_to_train keeps only train-set edges") {
  std::uint64_t rng = 31;
  std::vector<TemporalEdge> edges;
  for (std::uint32_t k = 0; k < 10; ++k) {
    edges.push_back({k % 5, (k + 1) % 5, 1.0, static_cast<std::int64_t>(k)});
  }
  EdgeList e;
  e.edges = edges;
  for (int k = 0; k < 5; ++k) e.original_id.push_back(k);
  auto g = bin_snapshots(e, 2, Aggregator::Last);
  REQUIRE(g.observations.size() == 10);

  auto split = split_observations(g, 7);
  auto masked = mask_adjacency_to_train(g, split);
  CHECK(masked.adjacency.nnz() == 8);
  CHECK(masked.observations.size() == g.observations.size());

  // all-train split leaves the adjacency unchanged
  SplitSet all_train;
  all_train.seed = 0;
  for (std::uint32_t k = 0; k < 10; ++k) all_train.train.push_back(k);
  auto unmasked = mask_adjacency_to_train(g, all_train);
  CHECK(max_abs_diff(unmasked.adjacency.to_dense(), g.adjacency.to_dense()) == 0.0);
  (void)rng;
}

TEST_CASE("masking a lone test edge empties the off-diagonal") {
  EdgeList e = edges_from({{0, 1, 3.0, 0}}, 2);
  auto g = bin_snapshots(e, 1, Aggregator::Last);
  SplitSet s;
  s.test.push_back(0);
  auto masked = mask_adjacency_to_train(g, s);
  CHECK(masked.adjacency.nnz() == 0);
}

TEST_CASE("prepared dataset round-trips bit-exactly") {
  std::uint64_t rng = 99;
  std::vector<TemporalEdge> edges;
  for (int k = 0; k < 40; ++k) {
    edges.push_back({static_cast<std::uint32_t>(next_u64(rng) % 7),
                     static_cast<std::uint32_t>(next_u64(rng) % 7), uniform(rng, -4, 4),
                     static_cast<std::int64_t>(next_u64(rng) % 500)});
  }
  EdgeList e;
  e.edges = edges;
  for (int k = 0; k < 7; ++k) e.original_id.push_back(k);

  PreparedDataset ds;
  ds.graph = bin_snapshots(e, 3, Aggregator::Mean);
  ds.split = split_observations(ds.graph, 12345);
  ds.aggregator = Aggregator::Mean;
  ds.source_digest = 0xDEADBEEFCAFEF00DULL;
  ds.source_name = "fixture.csv";

  const auto path = std::filesystem::temp_directory_path() / "tlgcn_ds_roundtrip.tlgd";
  save_dataset(path.string(), ds);
  auto back = load_dataset(path.string());

  CHECK(back.graph.n == ds.graph.n);
  CHECK(back.graph.t_slots == ds.graph.t_slots);
  CHECK(back.source_digest == ds.source_digest);
  CHECK(back.source_name == ds.source_name);
  CHECK(back.split.seed == ds.split.seed);
  CHECK(back.split.train == ds.split.train);
  CHECK(back.split.validation == ds.split.validation);
  CHECK(back.split.test == ds.split.test);
  REQUIRE(back.graph.observations.size() == ds.graph.observations.size());
  for (std::size_t k = 0; k < ds.graph.observations.size(); ++k) {
    CHECK(back.graph.observations[k].i == ds.graph.observations[k].i);
    CHECK(back.graph.observations[k].j == ds.graph.observations[k].j);
    CHECK(back.graph.observations[k].t == ds.graph.observations[k].t);
    CHECK(back.graph.observations[k].y == ds.graph.observations[k].y);
  }
  CHECK(max_abs_diff(back.graph.adjacency.to_dense(), ds.graph.adjacency.to_dense()) == 0.0);

  // byte-identical rewrite: the container embeds nothing nondeterministic
  const auto path2 = std::filesystem::temp_directory_path() / "tlgcn_ds_roundtrip2.tlgd";
  save_dataset(path2.string(), ds);
  CHECK(digest_file(path.string()) == digest_file(path2.string()));

  // wrong magic rejected
  {
    std::ofstream bad(path2, std::ios::binary);
    bad << "NOTADATASET";
  }
  CHECK_THROWS_AS(load_dataset(path2.string()), FileFormatError);

  std::filesystem::remove(path);
  std::filesystem::remove(path2);
}
