#pragma once

// Discrete part of the spectral side for finite parameter models, its stable
// and endoscopic expansions, and the coefficient bookkeeping between them.

#include "lts/elliptic.hpp"
#include "lts/packets.hpp"
#include "lts/sigma.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace lts {

struct DiscreteModelSet {
  std::vector<ParameterModel> models;  // model ids are their indices
};

// |Z(S_phi)| finite: no nonzero central direction fixed by every theta_x.
bool in_phi_disc(const ParameterModel& m);
// |Z(S_phi°)| finite.
bool in_phi_s_disc(const ParameterModel& m);
// {x : W(S_x) has a regular element}.
std::vector<Bits> disc_elements(const ParameterModel& m);

Rational i_phi(const ParameterModel& m, Bits x);
Rational e_phi(const ParameterModel& m, Bits x, SigmaTable& table);

GaussianRational discrete_part(const DiscreteModelSet& ms, const TestVector& f1, const TestVector& f2);
GaussianRational stable_form(const DiscreteModelSet& ms, const TestVector& f1, const TestVector& f2,
                             SigmaTable& table);

// Numerical data of the endoscopic pair attached to one elliptic class.
struct EndoscopicDescriptor {
  std::string label;  // endoscopic datum G'; "G" marks the principal one
  int model = 0;
  Bits x = 0;
  std::size_t class_index = 0;  // into elliptic_classes of component x
  std::int64_t out_card = 1;
  std::int64_t out_phi_card = 1;
  CentralSubgroup zbar;
  RootDatum sprime_datum;
  std::int64_t splus_over_s_card = 1;
  std::int64_t s_phi_prime_card = 1;
};

Rational iota_coefficient(std::int64_t out_card, std::int64_t zbar_card);

struct CoefficientCheck {
  std::string name;
  Rational lhs;
  Rational rhs;
  bool pass = false;
};

struct CoefficientReport {
  std::vector<CoefficientCheck> checks;
  bool pass() const;
};

CoefficientReport verify_coefficients(const ParameterModel& m, const SemisimpleClass& s,
                                      const EndoscopicDescriptor& d, SigmaTable& table);
// Descriptors sharing a label must agree on out_card and zbar; every elliptic
// class must carry exactly one descriptor.
CoefficientReport verify_descriptor_set(const DiscreteModelSet& ms, const std::vector<EndoscopicDescriptor>& ds);

// Throws InconsistentDescriptor when any check fails.
GaussianRational endoscopic_form(const DiscreteModelSet& ms, const std::vector<EndoscopicDescriptor>& ds,
                                 const TestVector& f1, const TestVector& f2, SigmaTable& table);
// Sum of the terms labelled "G".
GaussianRational principal_terms(const DiscreteModelSet& ms, const std::vector<EndoscopicDescriptor>& ds,
                                 const TestVector& f1, const TestVector& f2, SigmaTable& table);

GaussianRational s_disc(const DiscreteModelSet& ms, const TestVector& f1, const TestVector& f2, SigmaTable& table);

// One descriptor per elliptic class with trivial outer data and zbar; the
// identity class of x = 0 is labelled "G" when the base is semisimple.
std::vector<EndoscopicDescriptor> default_descriptors(const DiscreteModelSet& ms);

// Built-in model fixtures: trivial, o2, sl2_sbar, a1a1_swap, mixed.
std::optional<ParameterModel> catalog_model(const std::string& name, int id);
std::vector<std::string> catalog_model_names();
// Descriptors for the o2 fixture (zbar of order 2).
std::vector<EndoscopicDescriptor> o2_descriptors(int model_id);

// Random model with dim S_M, dim R <= 2 and a dual group assembled from
// twistable pieces; each R basis element twists a subset of pieces and each
// S_M basis element acts by a Weyl element.
ParameterModel random_model(int id, std::mt19937_64& rng);
GaussianRational random_gaussian(std::mt19937_64& rng);
TestVector random_vector(const DiscreteModelSet& ms, std::mt19937_64& rng);
TestVector constant_vector(const DiscreteModelSet& ms, GaussianRational value);

}  // namespace lts
