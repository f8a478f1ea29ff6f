#include "tlgcn/serialize.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "tlgcn/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "serialized containers assume a little-endian host");

namespace tlgcn {

std::uint64_t fnv1a64(const void* data, std::size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::size_t k = 0; k < len; ++k) {
    h ^= p[k];
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t digest_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for digest");
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof(buf));
    const auto got = in.gcount();
    for (std::streamsize k = 0; k < got; ++k) {
      h ^= static_cast<unsigned char>(buf[k]);
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

namespace {

class Writer {
 public:
  explicit Writer(const std::string& path) : out_(path, std::ios::binary) {
    if (!out_) throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  void bytes(const void* p, std::size_t len) {
    out_.write(static_cast<const char*>(p), static_cast<std::streamsize>(len));
  }
  void u32(std::uint32_t v) { bytes(&v, sizeof(v)); }
  void u64(std::uint64_t v) { bytes(&v, sizeof(v)); }
  void i64(std::int64_t v) { bytes(&v, sizeof(v)); }
  void f64(double v) { bytes(&v, sizeof(v)); }
  void str(const std::string& s) {
    u64(s.size());
    bytes(s.data(), s.size());
  }
  template <typename T>
  void vec(const std::vector<T>& v) {
    static_assert(std::is_trivially_copyable_v<T>);
    u64(v.size());
    bytes(v.data(), v.size() * sizeof(T));
  }
  void close() {
    out_.flush();
    if (!out_) throw std::runtime_error("write failed");
  }

 private:
  std::ofstream out_;
};

class Reader {
 public:
  explicit Reader(const std::string& path) : in_(path, std::ios::binary) {
    if (!in_) throw std::runtime_error("cannot open '" + path + "' for reading");
  }
  void bytes(void* p, std::size_t len) {
    in_.read(static_cast<char*>(p), static_cast<std::streamsize>(len));
    if (static_cast<std::size_t>(in_.gcount()) != len) {
      throw FileFormatError("truncated container");
    }
  }
  std::uint32_t u32() {
    std::uint32_t v;
    bytes(&v, sizeof(v));
    return v;
  }
  std::uint64_t u64() {
    std::uint64_t v;
    bytes(&v, sizeof(v));
    return v;
  }
  std::int64_t i64() {
    std::int64_t v;
    bytes(&v, sizeof(v));
    return v;
  }
  double f64() {
    double v;
    bytes(&v, sizeof(v));
    return v;
  }
  std::string str() {
    std::string s(checked_count(u64(), 1), '\0');
    bytes(s.data(), s.size());
    return s;
  }
  template <typename T>
  std::vector<T> vec() {
    static_assert(std::is_trivially_copyable_v<T>);
    std::vector<T> v(checked_count(u64(), sizeof(T)));
    bytes(v.data(), v.size() * sizeof(T));
    return v;
  }

 private:
  // guards against allocating absurd sizes from a corrupt length field
  std::size_t checked_count(std::uint64_t count, std::size_t elem) {
    if (count > (1ULL << 40) / elem) throw FileFormatError("implausible element count");
    return static_cast<std::size_t>(count);
  }
  std::ifstream in_;
};

constexpr char kDatasetMagic[8] = {'T', 'L', 'G', 'D', 'A', 'T', '0', '1'};
constexpr char kCheckpointMagic[8] = {'T', 'L', 'G', 'C', 'K', 'P', '0', '1'};

void write_snapshots(Writer& w, const SparseSnapshots& s) {
  w.u64(s.n());
  w.u64(s.t_slots());
  for (std::size_t t = 0; t < s.t_slots(); ++t) {
    w.vec(s.slice(t).row_offsets);
    w.vec(s.slice(t).cols);
    w.vec(s.slice(t).vals);
  }
}

SparseSnapshots read_snapshots(Reader& r) {
  const std::size_t n = r.u64();
  const std::size_t t_slots = r.u64();
  SparseSnapshots s(n, t_slots);
  for (std::size_t t = 0; t < t_slots; ++t) {
    s.slice(t).row_offsets = r.vec<std::size_t>();
    s.slice(t).cols = r.vec<std::uint32_t>();
    s.slice(t).vals = r.vec<double>();
  }
  s.validate();
  return s;
}

// field-by-field: Observation has internal padding whose bytes must not
// leak into the container (file digests are part of the determinism contract)
void write_observations(Writer& w, const std::vector<Observation>& obs) {
  w.u64(obs.size());
  for (const auto& o : obs) {
    w.u32(o.i);
    w.u32(o.j);
    w.u32(o.t);
    w.f64(o.y);
  }
}

std::vector<Observation> read_observations(Reader& r) {
  const std::uint64_t count = r.u64();
  std::vector<Observation> obs;
  obs.reserve(static_cast<std::size_t>(count));
  for (std::uint64_t k = 0; k < count; ++k) {
    Observation o;
    o.i = r.u32();
    o.j = r.u32();
    o.t = r.u32();
    o.y = r.f64();
    obs.push_back(o);
  }
  return obs;
}

void write_tensor(Writer& w, const Tensor3& t) {
  w.u64(t.d1());
  w.u64(t.d2());
  w.u64(t.d3());
  w.vec(t.values());
}

Tensor3 read_tensor(Reader& r) {
  const std::size_t d1 = r.u64(), d2 = r.u64(), d3 = r.u64();
  return Tensor3::from_values(d1, d2, d3, r.vec<double>());
}

}  // namespace

void save_dataset(const std::string& path, const PreparedDataset& ds) {
  Writer w(path);
  w.bytes(kDatasetMagic, sizeof(kDatasetMagic));
  w.u64(ds.graph.n);
  w.u64(ds.graph.t_slots);
  w.u32(static_cast<std::uint32_t>(ds.aggregator));
  w.u64(ds.source_digest);
  w.str(ds.source_name);
  write_observations(w, ds.graph.observations);
  write_snapshots(w, ds.graph.adjacency);
  w.u64(ds.split.seed);
  w.vec(ds.split.train);
  w.vec(ds.split.validation);
  w.vec(ds.split.test);
  w.close();
}

PreparedDataset load_dataset(const std::string& path) {
  Reader r(path);
  char magic[8];
  r.bytes(magic, sizeof(magic));
  if (std::memcmp(magic, kDatasetMagic, sizeof(magic)) != 0) {
    throw FileFormatError("'" + path + "' is not a prepared dataset");
  }
  PreparedDataset ds;
  ds.graph.n = r.u64();
  ds.graph.t_slots = r.u64();
  ds.aggregator = static_cast<Aggregator>(r.u32());
  ds.source_digest = r.u64();
  ds.source_name = r.str();
  ds.graph.observations = read_observations(r);
  ds.graph.adjacency = read_snapshots(r);
  ds.split.seed = r.u64();
  ds.split.train = r.vec<std::uint32_t>();
  ds.split.validation = r.vec<std::uint32_t>();
  ds.split.test = r.vec<std::uint32_t>();
  if (ds.graph.adjacency.n() != ds.graph.n || ds.graph.adjacency.t_slots() != ds.graph.t_slots) {
    throw FileFormatError("prepared dataset: adjacency dims disagree with header");
  }
  if (ds.split.total() != ds.graph.observations.size()) {
    throw FileFormatError("prepared dataset: split does not partition the observations");
  }
  return ds;
}

void save_checkpoint(const std::string& path, const Checkpoint& ck) {
  Writer w(path);
  w.bytes(kCheckpointMagic, sizeof(kCheckpointMagic));
  w.u32(static_cast<std::uint32_t>(ck.cfg.variant));
  w.u32(static_cast<std::uint32_t>(ck.cfg.activation));
  w.u64(ck.cfg.layers);
  w.u64(ck.cfg.fdim);
  w.u64(ck.cfg.m.t_slots());
  w.u64(ck.cfg.bandwidth);
  w.u32(static_cast<std::uint32_t>(ck.cfg.m.variant()));
  if (ck.cfg.m.variant() == MVariant::Custom) {
    w.vec(ck.cfg.m.entries());
  }
  w.u64(ck.init_seed);
  w.u64(ck.split_seed);
  w.u64(ck.dataset_digest);
  write_tensor(w, ck.params.x);
  w.vec(ck.params.head_w);
  w.f64(ck.params.head_b);
  w.u64(ck.params.layer_weights.size());
  for (const auto& lw : ck.params.layer_weights) write_tensor(w, lw);
  w.close();
}

Checkpoint load_checkpoint(const std::string& path) {
  Reader r(path);
  char magic[8];
  r.bytes(magic, sizeof(magic));
  if (std::memcmp(magic, kCheckpointMagic, sizeof(magic)) != 0) {
    throw FileFormatError("'" + path + "' is not a model checkpoint");
  }
  Checkpoint ck;
  ck.cfg.variant = static_cast<Variant>(r.u32());
  ck.cfg.activation = static_cast<Activation>(r.u32());
  ck.cfg.layers = r.u64();
  ck.cfg.fdim = r.u64();
  const std::size_t t_slots = r.u64();
  ck.cfg.bandwidth = r.u64();
  const auto mv = static_cast<MVariant>(r.u32());
  switch (mv) {
    case MVariant::M1: ck.cfg.m = make_m1(t_slots, ck.cfg.bandwidth); break;
    case MVariant::M2: ck.cfg.m = make_m2(t_slots, ck.cfg.bandwidth); break;
    default: ck.cfg.m = make_custom(t_slots, r.vec<double>()); break;
  }
  ck.init_seed = r.u64();
  ck.split_seed = r.u64();
  ck.dataset_digest = r.u64();
  ck.params.variant = ck.cfg.variant;
  ck.params.x = read_tensor(r);
  ck.params.head_w = r.vec<double>();
  ck.params.head_b = r.f64();
  const std::size_t n_lw = r.u64();
  for (std::size_t l = 0; l < n_lw; ++l) ck.params.layer_weights.push_back(read_tensor(r));
  return ck;
}

}  // namespace tlgcn
