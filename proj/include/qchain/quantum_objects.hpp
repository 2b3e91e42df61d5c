#pragma once

// States, POVMs and channels in Kraus form, together with the derived maps
// (adjoint, pinching, classical-quantum channels), the bipartite state built
// from a reference state and a channel in either transpose convention, and
// seed-deterministic random generators for all of them.

#include <cstdint>
#include <random>
#include <vector>

#include "qchain/matrix_core.hpp"

namespace qchain {

class DensityMatrix {
 public:
  explicit DensityMatrix(PsdMatrix base);
  explicit DensityMatrix(Matrix m) : DensityMatrix(PsdMatrix(std::move(m))) {}

  int dim() const { return base_.dim(); }
  const Matrix& matrix() const { return base_.matrix(); }
  const PsdMatrix& psd() const { return base_; }
  const Spectral& spectral() const { return base_.spectral(); }

 private:
  PsdMatrix base_;
};

class Povm {
 public:
  explicit Povm(std::vector<PsdMatrix> elements);

  int dim() const { return elements_[0].dim(); }
  int size() const { return static_cast<int>(elements_.size()); }
  const PsdMatrix& element(int j) const { return elements_[static_cast<size_t>(j)]; }
  const std::vector<PsdMatrix>& elements() const { return elements_; }

 private:
  std::vector<PsdMatrix> elements_;
};

// A completely positive map given by a Kraus family, without the
// trace-preservation requirement of Channel (adjoint maps live here).
struct KrausMap {
  std::vector<Matrix> kraus;
  int d_in = 0;
  int d_out = 0;

  Matrix apply(const Matrix& x) const;
  Matrix choi() const;  // sum_ij |i><j| (x) map(|i><j|), PSD iff the map is CP
};

class Channel {
 public:
  Channel(std::vector<Matrix> kraus, int d_in, int d_out);

  int d_in() const { return map_.d_in; }
  int d_out() const { return map_.d_out; }
  const std::vector<Matrix>& kraus() const { return map_.kraus; }
  const KrausMap& as_kraus_map() const { return map_; }

  Matrix apply(const Matrix& x) const { return map_.apply(x); }
  Matrix choi() const { return map_.choi(); }
  // The Hilbert-Schmidt adjoint x -> sum_i K_i^dag x K_i; unital, not TP.
  KrausMap adjoint() const;

  static Channel identity(int dim);

 private:
  KrausMap map_;
};

Matrix apply_channel(const Channel& c, const Matrix& x);

KrausMap adjoint_channel(const Channel& c);

// Dephasing onto the (degeneracy-grouped) eigenspaces of sigma. Fixes sigma
// and every operator commuting with it; outputs commute with sigma.
Channel pinching_channel(const DensityMatrix& sigma);

// X -> sum_i tau_i Tr[Pi_i X] for rank-one orthogonal projectors Pi_i summing
// to the identity.
Channel cq_channel(const Povm& projectors, const std::vector<DensityMatrix>& outputs);

enum class OmegaConvention { purification, transpose };

// Bipartite extension of tau through the channel:
//   purification:  (id (x) c) applied to |tau>><<tau| built in tau's eigenbasis,
//   transpose:     (tau^{1/2} (x) I)(id (x) c)(d |Phi+><Phi+|)(tau^{1/2} (x) I)
// with |Phi+> the canonical-basis maximally entangled state. Both reduce to
// tau on the first factor.
struct BipartiteState {
  DensityMatrix state;
  int d_a;
  int d_b;
  OmegaConvention convention;
};

BipartiteState bipartite_omega(const DensityMatrix& tau, const Channel& c,
                               OmegaConvention convention);

// Counter-based seed derivation: every consumer of randomness hangs off one
// master seed through (stream, counter) pairs, so audits are reproducible.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t counter);

// Deterministic standard-normal stream over mt19937_64 (Box-Muller on
// explicitly constructed uniforms, so the sequence is platform-independent).
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

  double real();
  Complex complex_unit_variance();
  Matrix complex_matrix(int rows, int cols);
  double uniform();  // [0, 1)

 private:
  std::uint64_t next_raw();
  std::mt19937_64 engine_;
};

DensityMatrix random_density(int dim, int rank, std::uint64_t seed);
Povm random_povm(int dim, int n_outcomes, std::uint64_t seed);
Channel random_channel(int d_in, int d_out, int n_kraus, std::uint64_t seed);
// Haar-ish random unitary via QR of a Gaussian matrix with fixed R-diagonal phases.
Matrix random_unitary(int dim, std::uint64_t seed);

}  // namespace qchain
