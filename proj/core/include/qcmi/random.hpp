#pragma once

// Seeded random states, unitaries, channels and POVMs for test batteries.

#include <cstdint>
#include <random>

#include "qcmi/channels.hpp"

namespace qcmi {

using Rng = std::mt19937_64;

/// splitmix64 of (seed + offset): independent substream seeds from one seed.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t offset);
Rng make_rng(std::uint64_t seed, std::uint64_t offset = 0);

/// Entries i.i.d. complex standard normal.
Matrix ginibre(std::size_t rows, std::size_t cols, Rng& rng);
/// Haar-distributed unitary (Gram-Schmidt of a Ginibre matrix with the
/// diagonal phase fix).
Matrix random_unitary(std::size_t d, Rng& rng);
/// Haar-distributed isometry C^d -> C^k.
Matrix random_isometry(std::size_t k, std::size_t d, Rng& rng);
Matrix random_pure_vector(std::size_t d, Rng& rng);
LabeledState random_pure(const SubsystemLayout& layout, Rng& rng);
/// Induced-measure mixed state of the given rank (0 means full rank).
LabeledState random_density(const SubsystemLayout& layout, Rng& rng, std::size_t rank = 0);
/// Channel with k Kraus operators read off a Haar isometry C^d -> C^{dk}.
KrausChannel random_channel(std::size_t d, std::size_t k, const LabelSet& target, Rng& rng);
/// k-outcome rank-one POVM from a Haar isometry C^d -> C^k.
Povm random_povm(std::size_t d, std::size_t k, const LabelSet& target, Rng& rng);

}  // namespace qcmi
