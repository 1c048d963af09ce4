#pragma once

// Shared domain types and quantum-number bookkeeping for systems of N
// identical particles on a line with pairwise forces.

#include <string>
#include <vector>

namespace et {

enum class Statistics { Boson, Fermion };

std::string to_string(Statistics s);

struct ParticleSystem {
  ParticleSystem(int n_particles, Statistics statistics);

  int n_particles;
  Statistics statistics;
};

// Global quantum number of the N-body oscillator with the centre of mass
// removed. Stored as a plain scalar; the solver consumes nothing else.
struct QuantumNumber {
  double value = 0.0;
};

// Q = sum(n_i) + (N-1)/2 for an occupation list of length N-1 with
// non-negative integer entries.
QuantumNumber q_from_occupations(const std::vector<int>& occupations, int n_particles);

// Ground-state value: (N-1)/2 for bosons, (N^2-1)/2 for fermions.
QuantumNumber q_ground(int n_particles, Statistics statistics);

// Number of particle pairs N(N-1)/2, as a double since it only ever feeds
// floating-point formulas.
double pair_count(int n_particles);

// Whether the envelope construction guarantees the direction of the error.
enum class BoundCharacter { LowerBound, UpperBound, Exact, NoGuarantee };

std::string to_string(BoundCharacter b);

// Scales solving the envelope equations, together with diagnostics.
struct EtSolution {
  double x0 = 0.0;        // mean-field distance scale
  double p0 = 0.0;        // conjugate momentum scale, p0 = Q / x0 by construction
  double energy = 0.0;
  BoundCharacter bound = BoundCharacter::NoGuarantee;
  double residual = 0.0;  // |lhs - rhs| of the stationarity condition at x0
  int n_roots_found = 0;
};

}  // namespace et
