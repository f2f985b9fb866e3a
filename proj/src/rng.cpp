#include "nwb/rng.hpp"

namespace nwb {

std::string_view to_string(StreamName name) {
  switch (name) {
    case StreamName::kPlacement: return "placement";
    case StreamName::kMobility: return "mobility";
    case StreamName::kLoss: return "loss";
    case StreamName::kProtocolDelay: return "protocol_delay";
    case StreamName::kSr: return "sr";
    case StreamName::kTraffic: return "traffic";
  }
  return "unknown";
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

SplitMix64::result_type SplitMix64::operator()() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

namespace {

std::uint64_t hash_name(std::string_view text) {
  // FNV-1a
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, StreamName name)
    : name_(name), key_(mix64(mix64(seed) ^ hash_name(to_string(name)))) {}

SplitMix64 RngStream::sub(std::initializer_list<std::uint64_t> keys) const {
  std::uint64_t h = key_;
  for (std::uint64_t k : keys) h = mix64(h ^ mix64(k + 0x632be59bd9b4e019ULL));
  return SplitMix64(h);
}

double RngStream::uniform(std::initializer_list<std::uint64_t> keys) const {
  return sub(keys).uniform();
}

}  // namespace nwb
