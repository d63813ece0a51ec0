//! \file ops.hpp
//! \brief Semidiscrete operators: grid + equation model + reconstruction,
//!        exposing interface fluxes, wave speeds and reference extraction.

#ifndef LDIRK_OPS_HPP_
#define LDIRK_OPS_HPP_

#include <memory>
#include <optional>

#include "ldirk/grid.hpp"
#include "ldirk/limiter.hpp"
#include "ldirk/physics.hpp"
#include "ldirk/spatial.hpp"

namespace ldirk {

//! 1D semidiscretization. interface_flux expects the ghost region of its
//! input to be current. Instances hold scratch buffers: one instance per
//! concurrently running problem.
class Op1D {
 public:
  Op1D(Grid1D grid, Boundary bc, int ncomp)
      : grid_(grid), bc_(std::move(bc)), ncomp_(ncomp) {}
  virtual ~Op1D() = default;

  const Grid1D& grid() const { return grid_; }
  const Boundary& bc() const { return bc_; }
  int ncomp() const { return ncomp_; }

  void fill(Field1D& u) const { fill_ghosts(u, bc_); }

  virtual void interface_flux(const Field1D& u, FluxArray1D& out) const = 0;
  virtual double max_wave_speed(const Field1D& u) const = 0;
  virtual double max_diffusion(const Field1D&) const { return 0.0; }
  virtual void extract_reference(const Field1D& u, const ReferenceVariable& ref,
                                 std::span<double> w_padded) const = 0;
  //! Time derivative of the reference variable given the solution rate L:
  //! the matching component for conservative references, the chain rule for
  //! pressure. Interior-length output.
  virtual void reference_rate(const Field1D& u, const Field1D& L,
                              const ReferenceVariable& ref,
                              std::span<double> out) const = 0;
  virtual void validate(const Field1D&) const {}

  //! Fills ghosts, evaluates interface fluxes and their divergence.
  void rhs(Field1D& u, Field1D& L) const;

 protected:
  Grid1D grid_;
  Boundary bc_;
  int ncomp_;
  mutable FluxArray1D scratch_flux_;
};

class ScalarOp1D final : public Op1D {
 public:
  ScalarOp1D(Grid1D grid, Boundary bc, ScalarLaw law, Recon recon,
             std::optional<DiffusionSpec> diffusion = std::nullopt);

  void interface_flux(const Field1D& u, FluxArray1D& out) const override;
  double max_wave_speed(const Field1D& u) const override;
  double max_diffusion(const Field1D& u) const override;
  void extract_reference(const Field1D& u, const ReferenceVariable& ref,
                         std::span<double> w_padded) const override;
  void reference_rate(const Field1D& u, const Field1D& L, const ReferenceVariable& ref,
                      std::span<double> out) const override;

  const ScalarLaw& law() const { return law_; }
  const std::optional<DiffusionSpec>& diffusion() const { return diffusion_; }

 private:
  ScalarLaw law_;
  Recon recon_;
  std::optional<DiffusionSpec> diffusion_;
  mutable std::vector<double> fp_, fm_;
};

class EulerOp1D final : public Op1D {
 public:
  EulerOp1D(Grid1D grid, Boundary bc, EulerModel model, Recon recon);

  void interface_flux(const Field1D& u, FluxArray1D& out) const override;
  double max_wave_speed(const Field1D& u) const override;
  void extract_reference(const Field1D& u, const ReferenceVariable& ref,
                         std::span<double> w_padded) const override;
  void reference_rate(const Field1D& u, const Field1D& L, const ReferenceVariable& ref,
                      std::span<double> out) const override;
  void validate(const Field1D& u) const override;

  const EulerModel& model() const { return model_; }

 private:
  EulerModel model_;
  Recon recon_;
  mutable std::vector<double> nodal_flux_;  // ncomp x padded
};

//! 2D analogue of Op1D.
class Op2D {
 public:
  Op2D(Grid2D grid, Boundary bc_x, Boundary bc_y, int ncomp)
      : grid_(grid), bc_x_(std::move(bc_x)), bc_y_(std::move(bc_y)), ncomp_(ncomp) {}
  virtual ~Op2D() = default;

  const Grid2D& grid() const { return grid_; }
  const Boundary& bc_x() const { return bc_x_; }
  const Boundary& bc_y() const { return bc_y_; }
  int ncomp() const { return ncomp_; }

  void fill(Field2D& u) const { fill_ghosts(u, bc_x_, bc_y_); }

  virtual void interface_flux(const Field2D& u, FluxArray2D& out) const = 0;
  virtual double max_wave_speed(const Field2D& u, Axis axis) const = 0;
  virtual void extract_reference(const Field2D& u, const ReferenceVariable& ref,
                                 Field2D& w) const = 0;
  virtual void validate(const Field2D&) const {}

  void rhs(Field2D& u, Field2D& L) const;

 protected:
  Grid2D grid_;
  Boundary bc_x_;
  Boundary bc_y_;
  int ncomp_;
  mutable FluxArray2D scratch_flux_;
};

class ScalarOp2D final : public Op2D {
 public:
  ScalarOp2D(Grid2D grid, Boundary bc_x, Boundary bc_y, ScalarLaw law, Recon recon);

  void interface_flux(const Field2D& u, FluxArray2D& out) const override;
  double max_wave_speed(const Field2D& u, Axis axis) const override;
  void extract_reference(const Field2D& u, const ReferenceVariable& ref,
                         Field2D& w) const override;

 private:
  ScalarLaw law_;
  Recon recon_;
};

class EulerOp2D final : public Op2D {
 public:
  EulerOp2D(Grid2D grid, Boundary bc_x, Boundary bc_y, EulerModel model, Recon recon);

  void interface_flux(const Field2D& u, FluxArray2D& out) const override;
  double max_wave_speed(const Field2D& u, Axis axis) const override;
  void extract_reference(const Field2D& u, const ReferenceVariable& ref,
                         Field2D& w) const override;
  void validate(const Field2D& u) const override;

  const EulerModel& model() const { return model_; }

 private:
  EulerModel model_;
  Recon recon_;
  mutable Field2D flux_x_, flux_y_;  // nodal physical fluxes
};

}  // namespace ldirk

#endif  // LDIRK_OPS_HPP_
