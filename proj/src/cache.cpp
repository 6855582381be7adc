#include "hkm/cache.hpp"

#include "hkm/errors.hpp"
#include "hkm/parser.hpp"

#include "json.hpp"
#include <openssl/evp.h>

#include <algorithm>
#include <fstream>
#include <random>
#include <span>
#include <sstream>
#include <thread>

namespace hkm {

using nlohmann::json;

namespace {

std::vector<std::string> formatted(std::span<const Polynomial> polys) {
  std::vector<std::string> out;
  for (const auto& f : polys) out.push_back(format(f));
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

json result_json(const ColengthResult& r) {
  return json{{"colength", r.colength}, {"basis_size", r.basis_size}, {"pairs_reduced", r.pairs_reduced}};
}

}  // namespace

std::string canonical_query(const RingPresentation& ring, const Ideal& ideal, MonomialOrder order) {
  const RingPtr target = ring.ring()->with_order(order);
  json q{{"p", ring.characteristic()},
         {"vars", ring.ring()->variables()},
         {"order", to_string(order)},
         {"relations", formatted(ring.defining_ideal().in_ring(target).generators())},
         {"ideal", formatted(ideal.in_ring(target).generators())}};
  return q.dump();
}

std::string sha256_hex(const std::string& text) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &length, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < length; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

std::string serialize_entry(const std::string& canonical, const ColengthResult& result) {
  json entry{{"engine", kEngineVersion}, {"query", json::parse(canonical)}, {"result", result_json(result)}};
  return entry.dump(2) + "\n";
}

ColengthCache::ColengthCache(std::filesystem::path directory) : directory_(std::move(directory)) {
  std::error_code ec;
  std::filesystem::create_directories(directory_, ec);
  if (ec) throw ValidationError("cannot create cache directory '" + directory_.string() + "': " + ec.message());
}

std::filesystem::path ColengthCache::entry_path(const std::string& canonical) const {
  const std::string key = sha256_hex(canonical);
  return directory_ / key.substr(0, 2) / (key + ".json");
}

std::optional<ColengthResult> ColengthCache::lookup(const std::string& canonical) const {
  const auto path = entry_path(canonical);
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return std::nullopt;
  try {
    const json entry = json::parse(read_file(path));
    if (entry.at("engine") != kEngineVersion) return std::nullopt;
    if (entry.at("query") != json::parse(canonical)) return std::nullopt;
    const json& r = entry.at("result");
    return ColengthResult{r.at("colength").get<std::uint64_t>(), r.at("basis_size").get<std::size_t>(),
                          r.at("pairs_reduced").get<std::uint64_t>()};
  } catch (const json::exception&) {
    return std::nullopt;
  } catch (const ValidationError&) {
    return std::nullopt;
  }
}

void ColengthCache::store(const std::string& canonical, const ColengthResult& result) const {
  static std::atomic<std::uint64_t> counter{0};
  const auto path = entry_path(canonical);
  std::filesystem::create_directories(path.parent_path());
  std::ostringstream tmp_name;
  tmp_name << '.' << path.filename().string() << '.' << std::hash<std::thread::id>{}(std::this_thread::get_id())
           << '.' << counter++ << ".tmp";
  const auto tmp = path.parent_path() / tmp_name.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot write cache entry '" + tmp.string() + "'");
    out << serialize_entry(canonical, result);
    if (!out.flush()) throw ValidationError("cannot write cache entry '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

ColengthSource ColengthCache::source(EngineOptions options) {
  options.source = nullptr;
  return [this, options](const RingPresentation& ring, const Ideal& ideal) {
    const std::string canonical = canonical_query(ring, ideal, options.order);
    if (auto hit = lookup(canonical)) {
      ++hits_;
      return *hit;
    }
    ++misses_;
    ColengthResult result = colength(ring, ideal, options);
    store(canonical, result);
    return result;
  };
}

std::vector<std::filesystem::path> ColengthCache::entries() const {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::recursive_directory_iterator(directory_))
    if (e.is_regular_file() && e.path().extension() == ".json" && e.path().filename().string()[0] != '.')
      out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

ColengthResult recompute_query(const std::string& canonical, const GroebnerOptions& options) {
  const json q = json::parse(canonical);
  const MonomialOrder order = parse_monomial_order(q.at("order").get<std::string>());
  RingPtr ring = PolyRing::make(q.at("p").get<std::uint32_t>(), q.at("vars").get<std::vector<std::string>>(), order);
  std::vector<Polynomial> relations;
  for (const auto& r : q.at("relations")) relations.push_back(parse_polynomial(r.get<std::string>(), ring));
  std::vector<Polynomial> gens;
  for (const auto& g : q.at("ideal")) gens.push_back(parse_polynomial(g.get<std::string>(), ring));
  RingMetadata meta;
  meta.name = "cache";
  meta.graded = false;
  RingPresentation presentation(ring, Ideal(ring, std::move(relations)), meta, options);
  EngineOptions engine;
  engine.order = order;
  engine.groebner = options;
  return colength(presentation, Ideal(ring, std::move(gens)), engine);
}

CacheVerification verify_cache(const ColengthCache& cache, std::size_t samples, const GroebnerOptions& options) {
  CacheVerification out;
  std::vector<std::filesystem::path> files = cache.entries();
  out.total_entries = files.size();
  std::mt19937_64 rng(20240601);
  std::shuffle(files.begin(), files.end(), rng);
  files.resize(std::min(samples, files.size()));
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    ++out.checked;
    try {
      const std::string bytes = read_file(path);
      const json entry = json::parse(bytes);
      const std::string canonical = entry.at("query").dump();
      if (cache.entry_path(canonical) != path) {
        out.mismatches.push_back(path.string() + ": file name does not match the query hash");
        continue;
      }
      if (entry.at("engine") != kEngineVersion) {
        out.mismatches.push_back(path.string() + ": stale engine tag");
        continue;
      }
      if (serialize_entry(canonical, recompute_query(canonical, options)) != bytes)
        out.mismatches.push_back(path.string() + ": recomputation differs");
    } catch (const std::exception& e) {
      out.mismatches.push_back(path.string() + ": " + e.what());
    }
  }
  return out;
}

}  // namespace hkm
