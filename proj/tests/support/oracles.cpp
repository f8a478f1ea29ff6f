#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>

namespace tlgcn::testing {

Tensor3 oracle_m_transform(const Tensor3& x, const TransformMatrix& m) {
  Tensor3 out(x.d1(), x.d2(), x.d3());
  for (std::size_t i = 0; i < x.d1(); ++i) {
    for (std::size_t j = 0; j < x.d2(); ++j) {
      for (std::size_t t = 0; t < x.d3(); ++t) {
        double sum = 0.0;
        for (std::size_t k = 0; k < x.d3(); ++k) {
          sum += m.entry(t, k) * x.at(i, j, k);
        }
        out.at(i, j, t) = sum;
      }
    }
  }
  return out;
}

Tensor3 oracle_facewise(const Tensor3& x, const Tensor3& y) {
  Tensor3 out(x.d1(), y.d2(), x.d3());
  for (std::size_t t = 0; t < x.d3(); ++t) {
    for (std::size_t i = 0; i < x.d1(); ++i) {
      for (std::size_t j = 0; j < y.d2(); ++j) {
        double sum = 0.0;
        for (std::size_t k = 0; k < x.d2(); ++k) {
          sum += x.at(i, k, t) * y.at(k, j, t);
        }
        out.at(i, j, t) = sum;
      }
    }
  }
  return out;
}

Tensor3 oracle_encode(const Tensor3& x, const Tensor3& a_norm_dense, const TransformMatrix& m,
                      std::size_t layers) {
  const std::size_t n = a_norm_dense.d1();
  const std::size_t f = x.d2();
  const std::size_t t_slots = x.d3();

  // temporal propagation of the adjacency vectors, element by element
  Tensor3 a_hat(n, n, t_slots);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t t = 0; t < t_slots; ++t) {
        double sum = 0.0;
        for (std::size_t k = 0; k < t_slots; ++k) {
          sum += m.entry(t, k) * a_norm_dense.at(i, j, k);
        }
        a_hat.at(i, j, t) = sum;
      }
    }
  }

  Tensor3 h = x;
  for (std::size_t l = 0; l < layers; ++l) {
    Tensor3 h_hat(n, f, t_slots);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t c = 0; c < f; ++c) {
        for (std::size_t t = 0; t < t_slots; ++t) {
          double sum = 0.0;
          for (std::size_t k = 0; k < t_slots; ++k) {
            sum += m.entry(t, k) * h.at(i, c, k);
          }
          h_hat.at(i, c, t) = sum;
        }
      }
    }
    // neighbor aggregation per node and slot
    Tensor3 next(n, f, t_slots);
    for (std::size_t t = 0; t < t_slots; ++t) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < f; ++c) {
          double sum = 0.0;
          for (std::size_t j = 0; j < n; ++j) {
            sum += a_hat.at(i, j, t) * h_hat.at(j, c, t);
          }
          next.at(i, c, t) = sum;
        }
      }
    }
    h = std::move(next);
  }
  return h;
}

std::vector<double> oracle_symmetric_eigenvalues(std::vector<double> a, std::size_t n) {
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
    }
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::fabs(at(p, q)) < 1e-300) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * at(p, q));
        const double sign = theta >= 0.0 ? 1.0 : -1.0;
        const double tau = sign / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(tau * tau + 1.0);
        const double s = tau * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = at(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

std::uint64_t next_u64(std::uint64_t& state) {
  // xorshift64*
  state ^= state >> 12;
  state ^= state << 25;
  state ^= state >> 27;
  return state * 0x2545F4914F6CDD1DULL;
}

double uniform(std::uint64_t& state, double lo, double hi) {
  const double u = static_cast<double>(next_u64(state) >> 11) * 0x1.0p-53;
  return lo + u * (hi - lo);
}

Tensor3 random_tensor(std::uint64_t& state, std::size_t d1, std::size_t d2, std::size_t d3) {
  Tensor3 t(d1, d2, d3);
  for (auto& v : t.values()) v = uniform(state, -1.0, 1.0);
  return t;
}

SparseSnapshots random_snapshots(std::uint64_t& state, std::size_t n, std::size_t t_slots,
                                 double density) {
  std::vector<std::vector<SparseSnapshots::Entry>> entries(t_slots);
  for (std::size_t t = 0; t < t_slots; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (uniform(state, 0.0, 1.0) < density) {
          entries[t].push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                                uniform(state, -1.0, 1.0)});
        }
      }
    }
  }
  return SparseSnapshots::from_entries(n, t_slots, entries);
}

}  // namespace tlgcn::testing
