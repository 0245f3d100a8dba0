#pragma once

#include "ibfem/forms.hpp"
#include "ibfem/norms.hpp"

namespace ibfem {

// manufactured solution with everything the assembly and the error norms need
struct ManufacturedCase {
  ScalarField u;
  VectorField grad_u;
  HessField hess_u;
  ScalarField f;  // forcing consistent with the operator
};

// oscillatory second order case: u = sin(pi (x^2+y^2)) cos(pi (x-y))
ManufacturedCase poisson_trig_case();

// patch fields reproduced exactly by the discrete spaces
ManufacturedCase poisson_linear_case();     // 1 + x + 2y
ManufacturedCase poisson_quadratic_case();  // x^2 + xy + y^2

// fourth order case: u = cos(a x + b) cos(a y + b), long wavelength
ManufacturedCase biharmonic_trig_case();
ManufacturedCase biharmonic_linear_case();     // 1 + x + y
ManufacturedCase biharmonic_quadratic_case();  // x^2 + xy + y^2

// infinite plate with a circular hole under far-field equibiaxial tension,
// plane strain; exact in the quarter geometry with symmetry on both axes
struct HolePlateCase {
  VectorField displacement;
  HessField stress;
  TractionField traction;  // stress times outward normal
  double radius = 0;
  double tension = 0;
};
HolePlateCase hole_plate_case(double radius, double youngs, double poisson, double tension);

// uniform strain field u = (ax + c1, by + c2); zero body force, linear patch
struct LinearElasticCase {
  VectorField displacement;
  HessField stress;
  TractionField traction;
};
LinearElasticCase linear_elastic_case(double ax, double by, double youngs, double poisson);

}  // namespace ibfem
