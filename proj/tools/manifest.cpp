#include "manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <fstream>
#include <memory>

namespace ncgcp::cli {

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError(path + ": cannot open file");
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw ValidationError("sha256: init failed");
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[md[i] >> 4];
    out += kHex[md[i] & 15];
  }
  return out;
}

io::json RunManifest::to_json() const {
  io::json in = io::json::array(), out = io::json::array();
  for (const auto& p : inputs) in.push_back({{"path", p}, {"sha256", sha256_file(p)}});
  for (const auto& p : outputs) out.push_back(p);
  io::json j{{"tool", "ncgcp"}, {"version", kVersion}, {"command", command}, {"parameters", parameters}};
  j["rng_seed"] = rng_seed ? io::json(*rng_seed) : io::json(nullptr);
  j["inputs"] = std::move(in);
  j["outputs"] = std::move(out);
  if (!results.empty()) j["results"] = results;
  return j;
}

void RunManifest::write_sidecar(const std::string& path) const { io::write_text(path + ".manifest.json", io::dump(to_json())); }

}  // namespace ncgcp::cli
