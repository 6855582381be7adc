#include "hkm/cache.hpp"
#include "hkm/errors.hpp"
#include "hkm/parser.hpp"
#include "hkm/pipeline.hpp"
#include "hkm/report.hpp"
#include "hkm/ring_spec.hpp"

#include "doctest.h"

#include <fstream>
#include <random>
#include <sstream>
#include <thread>

using namespace hkm;

namespace {

const char* kA1 = R"(# A1
name = A1
p = 3
vars = x, y, z
relation = x^2 + y*z
graded = true
unmixed = true
cm_image = true
cohen_macaulay = yes
f_rational = yes
known_e_hk = 3/2 ; quotient singularity
char_restrictions = odd
parameter_ideal = y, z
)";

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    std::random_device rd;
    path = std::filesystem::temp_directory_path() / ("hkm-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
};

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void expect_parse_error(const std::string& doc, std::size_t line, std::size_t column) {
  try {
    parse_ring_spec(doc);
    FAIL("no ParseError for: " << doc);
  } catch (const ParseError& e) {
    CHECK(e.line() == line);
    CHECK(e.column() == column);
  }
}

const CheckResult* find_check(const BoundReport& r, const std::string& id) {
  for (const auto& c : r.checks)
    if (c.id == id) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("ring spec: A1 parses with all metadata") {
  const RingSpec spec = parse_ring_spec(kA1);
  CHECK(spec.metadata.name == "A1");
  CHECK(spec.characteristic() == 3);
  CHECK(spec.ring->nvars() == 3);
  REQUIRE(spec.relations.size() == 1);
  CHECK(format(spec.relations[0]) == format(parse_polynomial("x^2+y*z", spec.ring)));
  CHECK(spec.metadata.unmixed);
  CHECK(spec.metadata.cohen_macaulay == true);
  CHECK(*spec.metadata.known_e_hk == Rational(3, 2));
  CHECK(spec.metadata.known_e_hk_source == "quotient singularity");
  CHECK(spec.parameter_ideal.size() == 2);
  const RingPresentation ring = to_presentation(spec, {}, MonomialOrder::grevlex);
  CHECK(ring.dimension() == 2);
}

TEST_CASE("ring spec: invalid inputs") {
  std::string bad_p = kA1;
  bad_p.replace(bad_p.find("p = 3"), 5, "p = 4");
  CHECK_THROWS_AS(parse_ring_spec(bad_p), ValidationError);
  try {
    parse_ring_spec(bad_p);
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("prime") != std::string::npos);
  }

  std::string even = kA1;
  even.replace(even.find("p = 3"), 5, "p = 2");
  CHECK_THROWS_AS(parse_ring_spec(even), ValidationError);

  expect_parse_error("name = a\np = 3\nvars = x, y\nrelation = x^2 + *y\n", 4, 18);
  expect_parse_error("name = a\nbogus = 1\n", 2, 1);
  expect_parse_error("name = a\nname = b\n", 2, 1);
  expect_parse_error("name = a\np = 3x\nvars = x\n", 2, 6);
  expect_parse_error("name = a\np = 3\nvars = x, 2y\n", 3, 11);
  expect_parse_error("name = a\np = 3\n", 2, 1);
  expect_parse_error("name = a\np = 3\nvars = x\ngraded = maybe\n", 4, 10);
  expect_parse_error("name = a\np = 3\nvars = x\nknown_e_hk = 1\n", 4, 15);
  expect_parse_error("just words\n", 1, 1);
  CHECK_THROWS_AS(load_ring_spec("/nonexistent/x.ring"), ValidationError);
}

TEST_CASE("ring spec: every corpus file round-trips") {
  const auto files = corpus_files(HKM_CORPUS_DIR);
  CHECK(files.size() >= 15);
  for (const auto& f : files) {
    CAPTURE(f.string());
    const RingSpec spec = load_ring_spec(f);
    const RingSpec again = parse_ring_spec(format_ring_spec(spec));
    CHECK(again == spec);
    CHECK(format_ring_spec(again) == format_ring_spec(spec));
    CHECK(spec.metadata.known_e_hk.has_value());
  }
}

TEST_CASE("cache: store, lookup, stale entries") {
  TempDir dir;
  ColengthCache cache(dir.path);
  const RingSpec spec = parse_ring_spec(kA1);
  const RingPresentation ring = to_presentation(spec, {}, MonomialOrder::grevlex);
  const Ideal m = ring.maximal_ideal();
  const std::string key = canonical_query(ring, frobenius_power(m, 3), MonomialOrder::grevlex);
  CHECK(key == canonical_query(ring, frobenius_power(m, 3), MonomialOrder::grevlex));
  CHECK(key != canonical_query(ring, frobenius_power(m, 9), MonomialOrder::grevlex));
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");

  CHECK_FALSE(cache.lookup(key));
  const ColengthResult direct = colength(ring, frobenius_power(m, 3));
  CHECK(direct.colength == 13);
  cache.store(key, direct);
  const auto path = cache.entry_path(key);
  CHECK(std::filesystem::exists(path));
  CHECK(path.parent_path().filename().string() == path.stem().string().substr(0, 2));
  REQUIRE(cache.lookup(key));
  CHECK(*cache.lookup(key) == direct);
  CHECK(read_file(path) == serialize_entry(key, direct));
  CHECK(recompute_query(key) == direct);

  // a different engine tag is a miss
  std::string text = read_file(path);
  text.replace(text.find(kEngineVersion), std::string(kEngineVersion).size(), "hkm-engine-0");
  std::ofstream(path, std::ios::binary | std::ios::trunc) << text;
  CHECK_FALSE(cache.lookup(key));
  std::ofstream(path, std::ios::binary | std::ios::trunc) << "{ truncated";
  CHECK_FALSE(cache.lookup(key));
}

TEST_CASE("cache: source counts hits and verification detects tampering") {
  TempDir dir;
  ColengthCache cache(dir.path);
  const RingPresentation ring = to_presentation(parse_ring_spec(kA1), {}, MonomialOrder::grevlex);
  EngineOptions engine;
  engine.source = cache.source(engine);
  const HKFunction first = hk_function(ring, ring.maximal_ideal(), 2, engine);
  const auto misses = cache.misses();
  CHECK(misses >= 2);
  const HKFunction second = hk_function(ring, ring.maximal_ideal(), 2, engine);
  CHECK(cache.misses() == misses);
  CHECK(cache.hits() >= 2);
  CHECK(first.samples[1].colength == second.samples[1].colength);
  CHECK(second.samples[1].colength == 121);

  CacheVerification v = verify_cache(cache, 20);
  CHECK(v.ok());
  CHECK(v.checked == v.total_entries);

  const auto entries = cache.entries();
  REQUIRE(!entries.empty());
  std::string text = read_file(entries.front());
  const auto at = text.find("\"colength\": ");
  REQUIRE(at != std::string::npos);
  text.insert(at + 12, "1");
  std::ofstream(entries.front(), std::ios::binary | std::ios::trunc) << text;
  v = verify_cache(cache, 20);
  CHECK_FALSE(v.ok());
  CHECK(v.mismatches.size() == 1);
}

TEST_CASE("cache: concurrent writers of distinct keys") {
  TempDir dir;
  ColengthCache cache(dir.path);
  std::vector<std::thread> threads;
  for (unsigned t = 0; t < 8; ++t)
    threads.emplace_back([&, t] {
      for (unsigned i = 0; i < 25; ++i) {
        const std::string key = "{\"t\":" + std::to_string(t) + ",\"i\":" + std::to_string(i) + "}";
        cache.store(key, ColengthResult{t * 100 + i, i, t});
      }
    });
  for (auto& th : threads) th.join();
  CHECK(cache.entries().size() == 200);
  for (unsigned t = 0; t < 8; ++t)
    for (unsigned i = 0; i < 25; ++i) {
      const auto r = cache.lookup("{\"t\":" + std::to_string(t) + ",\"i\":" + std::to_string(i) + "}");
      REQUIRE(r);
      CHECK(r->colength == t * 100 + i);
    }
}

TEST_CASE("pipeline: A1 at e_max = 2") {
  const BoundReport r = run_pipeline(parse_ring_spec(kA1), PipelineOptions{2, 12, {}});
  REQUIRE(r.error.empty());
  CHECK(r.d == 2);
  CHECK_FALSE(r.regular);
  CHECK(r.e_hk.value == Rational(3, 2));
  CHECK(r.e_hk.uncertainty == 0);
  CHECK(r.e_r.value == 2);
  CHECK(r.known_e_hk_status == "consistent");
  for (const auto& c : r.checks) {
    CAPTURE(c.id);
    CAPTURE(c.note);
    CHECK((c.status == CheckStatus::pass || c.status == CheckStatus::not_applicable));
  }
  REQUIRE(find_check(r, kCheckLowerBound));
  CHECK(find_check(r, kCheckLowerBound)->status == CheckStatus::pass);
  REQUIRE(find_check(r, kCheckParameterIdeal));
  CHECK(find_check(r, kCheckParameterIdeal)->status == CheckStatus::pass);
  REQUIRE(r.f_stats.size() == 3);
  CHECK(r.f_stats[0].f.value == 0);
  CHECK(r.f_stats[2].f.value == 6);
  CHECK(exit_status({r}) == 0);
}

TEST_CASE("pipeline: regular ring, node, broken spec") {
  const BoundReport plane = run_pipeline(parse_ring_spec("name = plane\np = 5\nvars = x, y\nunmixed = true\ncm_image = true\n"),
                                         PipelineOptions{2, 12, {}});
  REQUIRE(plane.error.empty());
  CHECK(plane.regular);
  CHECK(plane.e_hk.value == 1);
  CHECK(plane.e_hk.uncertainty == 0);
  CHECK(find_check(plane, kCheckLowerBound)->status == CheckStatus::not_applicable);

  const BoundReport node = run_pipeline(load_ring_spec(std::filesystem::path(HKM_CORPUS_DIR) / "node-p3.ring"),
                                        PipelineOptions{2, 12, {}});
  REQUIRE(node.error.empty());
  CHECK(node.d == 1);
  CHECK(node.e_hk.value == 2);
  CHECK(node.e_r.value == 2);
  const auto table = epsilon_table({node});
  REQUIRE(table.size() == 1);
  CHECK(table[0].epsilon.value == 1);

  // dimension disagrees with the declared value
  const BoundReport broken =
      run_pipeline(parse_ring_spec("name = b\np = 3\nvars = x, y\nrelation = x*y\nexpected_dimension = 2\n"), {});
  CHECK_FALSE(broken.error.empty());
  CHECK(broken.error.rfind("presentation: ", 0) == 0);
  CHECK(exit_status({plane, broken}) == 3);
}

TEST_CASE("reports: deterministic JSON and CSV") {
  TempDir dir;
  std::ofstream(dir.path / "a.ring") << kA1;
  std::ofstream(dir.path / "b.ring") << "name = b\np = 3\nvars = x\n";
  std::ofstream(dir.path / "c.ring") << "name = c\np = 3\n";
  std::ofstream(dir.path / "notes.txt") << "ignored";
  const auto files = corpus_files(dir.path);
  REQUIRE(files.size() == 3);
  const PipelineOptions options{2, 12, {}};
  const auto serial = run_corpus(files, options, false);
  const auto parallel = run_corpus(files, options, true);
  CHECK(serial[2].ring_name == "c");
  CHECK(serial[2].error.rfind("spec: ", 0) == 0);
  const ReportSettings settings{2, 12, MonomialOrder::grevlex};
  const std::string a = render_json(report_json(serial, epsilon_table(serial), settings));
  const std::string b = render_json(report_json(parallel, epsilon_table(parallel), settings));
  CHECK(a == b);
  CHECK(render_csv(serial, epsilon_table(serial)) == render_csv(parallel, epsilon_table(parallel)));

  const auto doc = nlohmann::json::parse(a);
  CHECK(doc["engine_version"] == kEngineVersion);
  CHECK(doc["settings"]["e_max"] == 2);
  CHECK(doc["rings"].size() == 3);
  CHECK(doc["rings"][0]["e_hk"]["value"] == "3/2");
  CHECK(doc["rings"][2]["e_hk"].is_null());
  CHECK(doc["exit_status"] == 3);

  const std::string csv = render_csv(serial, epsilon_table(serial));
  std::istringstream lines(csv);
  std::string header;
  std::getline(lines, header);
  CHECK(header.rfind("ring,p,d,regular,e,e_uncertainty,e_hk,e_hk_uncertainty,e_hk_method,", 0) == 0);
  const auto columns = std::count(header.begin(), header.end(), ',');
  std::string row;
  for (int i = 0; i < 3; ++i) {
    std::getline(lines, row);
    if (row.find('"') == std::string::npos) CHECK(std::count(row.begin(), row.end(), ',') == columns);
  }
  std::getline(lines, row);
  CHECK(row.empty());
  std::getline(lines, row);
  CHECK(row.rfind("d,p,rings,epsilon", 0) == 0);
}

TEST_CASE("csv quoting") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_field("two\nlines") == "\"two\nlines\"");
}
