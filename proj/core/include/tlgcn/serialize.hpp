#ifndef TLGCN_SERIALIZE_HPP
#define TLGCN_SERIALIZE_HPP

#include <cstdint>
#include <string>

#include "tlgcn/dynamic_graph.hpp"
#include "tlgcn/model.hpp"

namespace tlgcn {

/// A binned dataset plus its split, self-contained for reproducible training
/// without re-ingestion.
struct PreparedDataset {
  DynamicGraph graph;
  SplitSet split;
  Aggregator aggregator = Aggregator::Last;
  std::uint64_t source_digest = 0;  // FNV-1a over the raw edge-list bytes
  std::string source_name;
};

/// FNV-1a 64-bit digest of a byte buffer / of a file's contents.
std::uint64_t fnv1a64(const void* data, std::size_t len);
std::uint64_t digest_file(const std::string& path);

/// Binary container round-trip for prepared datasets. Doubles are stored
/// bit-exactly; load rejects wrong magic or truncated payloads with
/// FileFormatError.
void save_dataset(const std::string& path, const PreparedDataset& ds);
PreparedDataset load_dataset(const std::string& path);

/// Everything a resumed evaluation needs: encoder config (including the
/// transform matrix), parameters, and the seeds that produced them.
struct Checkpoint {
  EncoderConfig cfg;
  ModelParams params;
  std::uint64_t init_seed = 0;
  std::uint64_t split_seed = 0;
  std::uint64_t dataset_digest = 0;
};

/// Bit-exact checkpoint round-trip: save then load yields bitwise-equal
/// forward outputs.
void save_checkpoint(const std::string& path, const Checkpoint& ck);
Checkpoint load_checkpoint(const std::string& path);

}  // namespace tlgcn

#endif  // TLGCN_SERIALIZE_HPP
