#ifndef FRACTION_FORGE_IO_DIGEST_HPP
#define FRACTION_FORGE_IO_DIGEST_HPP

#include <fstream>
#include <iterator>
#include <memory>
#include <string>

#include <openssl/evp.h>

#include "fraction_forge/error.hpp"

namespace ff {

inline std::string sha256_hex(const std::string& bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 || EVP_DigestFinal_ex(ctx.get(), md, &len) != 1)
    throw Error("SHA-256 failed");
  static const char* hex = "0123456789abcdef";
  std::string r;
  for (unsigned int i = 0; i < len; ++i) {
    r += hex[md[i] >> 4];
    r += hex[md[i] & 15];
  }
  return r;
}

inline std::string read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

inline std::string file_sha256(const std::string& path) { return sha256_hex(read_file_bytes(path)); }

}  // namespace ff

#endif
