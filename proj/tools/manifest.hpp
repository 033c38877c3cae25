#pragma once

// Run manifests: one JSON record written beside each output file.

#include <openssl/evp.h>

#include <array>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "dialsum/corpus_io.hpp"
#include "dialsum/error.hpp"

namespace dialsum::cli {

inline constexpr std::string_view kToolVersion = "0.1.0";

class Sha256 {
 public:
  Sha256() : ctx_(EVP_MD_CTX_new()) {
    if (!ctx_ || EVP_DigestInit_ex(ctx_, EVP_sha256(), nullptr) != 1) throw io_error("sha256 init failed");
  }
  ~Sha256() { EVP_MD_CTX_free(ctx_); }
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;

  void update(std::string_view data) { EVP_DigestUpdate(ctx_, data.data(), data.size()); }

  std::string hex() {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx_, md.data(), &len);
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
      out += kDigits[md[i] >> 4];
      out += kDigits[md[i] & 0xF];
    }
    return out;
  }

 private:
  EVP_MD_CTX* ctx_;
};

inline std::string sha256_hex(std::string_view data) {
  Sha256 h;
  h.update(data);
  return h.hex();
}

inline std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open " + path);
  Sha256 h;
  std::array<char, 1 << 16> buf;
  while (in.read(buf.data(), buf.size()) || in.gcount() > 0) {
    h.update(std::string_view(buf.data(), static_cast<size_t>(in.gcount())));
  }
  return h.hex();
}

// Paths are recorded by file name only so manifests do not depend on the
// output directory.
struct Manifest {
  std::string subcommand;
  uint64_t seed = 0;
  Json config = Json::object();
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  size_t records = 0;

  void write_beside(const std::string& out_path) const {
    Json in = Json::array();
    for (const std::string& p : inputs) {
      in.push_back(Json{{"file", std::filesystem::path(p).filename().string()}, {"sha256", sha256_file(p)}});
    }
    Json outs = Json::array();
    for (const std::string& p : outputs) {
      outs.push_back(Json{{"file", std::filesystem::path(p).filename().string()}, {"sha256", sha256_file(p)}});
    }
    const Json rec{{"tool", "dialsum"},
                   {"version", kToolVersion},
                   {"subcommand", subcommand},
                   {"seed", seed},
                   {"config_sha256", sha256_hex(dump_record(config))},
                   {"config", config},
                   {"inputs", std::move(in)},
                   {"outputs", std::move(outs)},
                   {"records", records}};
    const std::string path = out_path + ".manifest.json";
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw io_error("cannot open " + path + " for writing");
    f << rec.dump(2) << '\n';
    if (!f) throw io_error("write failure on " + path);
  }
};

}  // namespace dialsum::cli
