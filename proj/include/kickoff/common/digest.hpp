#ifndef KICKOFF_COMMON_DIGEST_HPP_
#define KICKOFF_COMMON_DIGEST_HPP_

#include <cstdint>
#include <cstring>
#include <string>

namespace kickoff {

// FNV-1a 64-bit, used for compact state digests in replay logs and
// determinism checks.
class Digest {
 public:
  void add_bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      hash_ ^= p[i];
      hash_ *= 0x100000001b3ULL;
    }
  }

  // -0.0 hashes as +0.0 so mirrored/negated states with semantically equal
  // coordinates digest identically
  void add_f64(double v) {
    const double c = v + 0.0;
    add_bytes(&c, sizeof(c));
  }
  void add_u64(std::uint64_t v) { add_bytes(&v, sizeof(v)); }
  void add_i32(std::int32_t v) { add_bytes(&v, sizeof(v)); }

  std::uint64_t value() const { return hash_; }

  std::string hex() const {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    std::uint64_t v = hash_;
    for (int i = 15; i >= 0; --i) {
      out[static_cast<std::size_t>(i)] = digits[v & 0xF];
      v >>= 4;
    }
    return out;
  }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

}  // namespace kickoff

#endif  // KICKOFF_COMMON_DIGEST_HPP_
