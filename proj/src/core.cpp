#include "et/core.hpp"

#include <stdexcept>

namespace et {

std::string to_string(Statistics s) {
  return s == Statistics::Boson ? "boson" : "fermion";
}

ParticleSystem::ParticleSystem(int n, Statistics stats) : n_particles(n), statistics(stats) {
  if (n < 2) throw std::invalid_argument("a pairwise system needs at least 2 particles");
}

QuantumNumber q_from_occupations(const std::vector<int>& occupations, int n_particles) {
  if (n_particles < 2) throw std::invalid_argument("a pairwise system needs at least 2 particles");
  if (occupations.size() != static_cast<std::size_t>(n_particles - 1))
    throw std::invalid_argument("occupation list must have N-1 entries, got " +
                                std::to_string(occupations.size()) + " for N = " +
                                std::to_string(n_particles));
  long long total = 0;
  for (int occ : occupations) {
    if (occ < 0) throw std::invalid_argument("occupation numbers must be non-negative");
    total += occ;
  }
  return QuantumNumber{static_cast<double>(total) + 0.5 * (n_particles - 1)};
}

QuantumNumber q_ground(int n_particles, Statistics statistics) {
  if (n_particles < 2) throw std::invalid_argument("a pairwise system needs at least 2 particles");
  const double n = n_particles;
  if (statistics == Statistics::Boson) return QuantumNumber{0.5 * (n - 1.0)};
  return QuantumNumber{0.5 * (n * n - 1.0)};
}

double pair_count(int n_particles) {
  return 0.5 * static_cast<double>(n_particles) * static_cast<double>(n_particles - 1);
}

std::string to_string(BoundCharacter b) {
  switch (b) {
    case BoundCharacter::LowerBound: return "LowerBound";
    case BoundCharacter::UpperBound: return "UpperBound";
    case BoundCharacter::Exact: return "Exact";
    case BoundCharacter::NoGuarantee: return "NoGuarantee";
  }
  return "NoGuarantee";
}

}  // namespace et
