#include "nlsw/ref_cache.hpp"

#include <bit>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <thread>

#include <json.hpp>

#include "nlsw/version.hpp"

namespace nlsw {

namespace {

uint64_t fnv1a64(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string canonical(const ReferenceCache::Key& k) {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "alpha=%.17g;eps=%.17g;p=%d;beta=%.17g;T=%.17g;M=%d;tau=%.17g;"
                "a=%.17g;b=%.17g",
                k.alpha, k.eps, k.p, k.beta_exp, k.T, k.M, k.tau, k.a, k.b);
  return buf;
}

void put_le_double(std::string& out, double v) {
  auto bits = std::bit_cast<uint64_t>(v);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
}

double get_le_double(const char* p) {
  uint64_t bits = 0;
  for (int i = 0; i < 8; ++i)
    bits |= static_cast<uint64_t>(static_cast<unsigned char>(p[i])) << (8 * i);
  return std::bit_cast<double>(bits);
}

constexpr char kMagic[8] = {'N', 'L', 'S', 'W', 'R', 'E', 'F', '1'};

}  // namespace

ReferenceCache::ReferenceCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

std::filesystem::path ReferenceCache::data_path(const Key& key) const {
  char name[32];
  std::snprintf(name, sizeof name, "%016llx.ref",
                static_cast<unsigned long long>(fnv1a64(canonical(key))));
  return dir_ / name;
}

std::filesystem::path ReferenceCache::sidecar_path(const Key& key) const {
  auto p = data_path(key);
  p.replace_extension(".json");
  return p;
}

std::optional<SpectralField> ReferenceCache::load(const Key& key) const {
  const auto side = sidecar_path(key);
  const auto data = data_path(key);
  std::ifstream js(side);
  if (!js) return std::nullopt;
  nlohmann::json j;
  try {
    js >> j;
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;
  }
  auto d = [&](const char* k) { return j.value(k, std::numeric_limits<double>::quiet_NaN()); };
  if (d("alpha") != key.alpha || d("eps") != key.eps ||
      j.value("p", -1) != key.p || d("beta") != key.beta_exp ||
      d("T") != key.T || j.value("M", -1) != key.M || d("tau") != key.tau ||
      d("a") != key.a || d("b") != key.b)
    return std::nullopt;

  std::ifstream in(data, std::ios::binary);
  if (!in) return std::nullopt;
  std::string blob((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  const size_t expect = sizeof kMagic + 8 + static_cast<size_t>(key.M) * 16;
  if (blob.size() != expect || std::memcmp(blob.data(), kMagic, sizeof kMagic) != 0)
    return std::nullopt;
  const char* p = blob.data() + sizeof kMagic;
  uint64_t M = 0;
  for (int i = 0; i < 8; ++i)
    M |= static_cast<uint64_t>(static_cast<unsigned char>(p[i])) << (8 * i);
  p += 8;
  if (M != static_cast<uint64_t>(key.M)) return std::nullopt;

  SpectralField field(make_grid(key.a, key.b, key.M));
  for (auto& c : field.raw()) {
    c = cplx(get_le_double(p), get_le_double(p + 8));
    p += 16;
  }
  return field;
}

void ReferenceCache::store(const Key& key, const SpectralField& field) const {
  std::string blob(kMagic, sizeof kMagic);
  const uint64_t M = static_cast<uint64_t>(field.size());
  for (int i = 0; i < 8; ++i) blob.push_back(static_cast<char>((M >> (8 * i)) & 0xff));
  for (const cplx& c : field.raw()) {
    put_le_double(blob, c.real());
    put_le_double(blob, c.imag());
  }

  nlohmann::json j;
  j["alpha"] = key.alpha;
  j["eps"] = key.eps;
  j["p"] = key.p;
  j["beta"] = key.beta_exp;
  j["T"] = key.T;
  j["M"] = key.M;
  j["tau"] = key.tau;
  j["a"] = key.a;
  j["b"] = key.b;
  j["solver_version"] = std::string(solver_version);
  j["created_unix"] = std::chrono::duration_cast<std::chrono::seconds>(
                          std::chrono::system_clock::now().time_since_epoch())
                          .count();

  const auto data = data_path(key);
  const auto side = sidecar_path(key);
  // Unique staging names keep concurrent writers from clobbering each other
  // mid-write; rename is atomic on POSIX.
  const auto tag = std::to_string(
      std::hash<std::thread::id>{}(std::this_thread::get_id()));
  auto data_tmp = data;
  data_tmp += ".tmp" + tag;
  auto side_tmp = side;
  side_tmp += ".tmp" + tag;
  {
    std::ofstream out(data_tmp, std::ios::binary | std::ios::trunc);
    out.write(blob.data(), static_cast<std::streamsize>(blob.size()));
  }
  {
    std::ofstream out(side_tmp, std::ios::trunc);
    out << j.dump(2) << '\n';
  }
  std::filesystem::rename(data_tmp, data);
  std::filesystem::rename(side_tmp, side);
}

}  // namespace nlsw
