#include "xpinn/autodiff/tape.hpp"
#include "xpinn/solver/energy.hpp"

#include <cmath>

namespace xpinn::solver {

namespace {

double sign(double x) { return x > 0.0 ? 1.0 : x < 0.0 ? -1.0 : 0.0; }

}  // namespace

ModelEnergy::ModelEnergy(const XpinnModel& model, elastic::PointSets points, elastic::LoadSpec loads,
                         elastic::ElasticMaterial material)
    : dim_(model.dimension()), points_(std::move(points)), loads_(std::move(loads)), material_(material) {
  if (points_.traction.size() != loads_.tractions.size() || points_.dirichlet.size() != loads_.dirichlet.size())
    throw Error("point sets do not match the load specification");
  for (const auto& d : points_.dirichlet)
    if (d.empty()) throw Error("prescribed displacement without Dirichlet boundary points");

  std::vector<const quad::QuadraturePoint*> all;
  auto add = [&](const std::vector<quad::QuadraturePoint>& list, Kind k, int set) {
    for (const auto& p : list) {
      all.push_back(&p);
      kind_.push_back(k);
      set_.push_back(set);
    }
  };
  add(points_.domain, Kind::domain, -1);
  for (std::size_t i = 0; i < points_.traction.size(); ++i) add(points_.traction[i], Kind::traction, static_cast<int>(i));
  for (std::size_t i = 0; i < points_.dirichlet.size(); ++i)
    add(points_.dirichlet[i], Kind::dirichlet, static_cast<int>(i));

  const auto n = static_cast<Eigen::Index>(all.size());
  x_.resize(dim_, n);
  weight_.resize(n);
  enriched_groups_.resize(model.enriched().size());
  for (Eigen::Index c = 0; c < n; ++c) {
    const auto& p = *all[static_cast<std::size_t>(c)];
    for (int i = 0; i < dim_; ++i) x_(i, c) = p.position[i];
    weight_[c] = p.weight;
    if (p.tag.enriched()) enriched_groups_[model.enriched_net_for(p.tag.crack)].columns.push_back(c);
  }
  const bool singular = model.config().singular_enabled;
  for (Group& g : enriched_groups_) {
    const auto m = static_cast<Eigen::Index>(g.columns.size());
    g.x.resize(dim_, m);
    g.d.resize(m);
    g.grad_d.resize(dim_, m);
    if (singular) {
      g.e.resize(4, m);
      g.grad_e.assign(4, Eigen::MatrixXd(dim_, m));
    }
    for (Eigen::Index j = 0; j < m; ++j) {
      const Eigen::Index c = g.columns[static_cast<std::size_t>(j)];
      const auto& p = *all[static_cast<std::size_t>(c)];
      g.x.col(j) = x_.col(c);
      const EnrichmentSample e = model.enrichment(p.tag.crack, p.position, p.tag.side);
      g.d[j] = e.value;
      for (int i = 0; i < dim_; ++i) g.grad_d(i, j) = e.gradient[i];
      if (singular) {
        const auto ch = model.singular_channels(p.tag.crack, p.position, p.tag.side);
        for (int b = 0; b < 4; ++b) {
          g.e(b, j) = ch.value[b];
          for (int i = 0; i < dim_; ++i) g.grad_e[b](i, j) = ch.gradient[b][i];
        }
      }
    }
  }
}

void ModelEnergy::forward_field(const FieldNet& f, const Eigen::MatrixXd& x, std::vector<nn::TangentPass>& passes,
                                Eigen::MatrixXd& value, std::vector<Eigen::MatrixXd>& tangent) {
  passes.resize(f.nets.size());
  value.resize(f.outputs, x.cols());
  tangent.assign(static_cast<std::size_t>(dim_), Eigen::MatrixXd(f.outputs, x.cols()));
  Eigen::Index row = 0;
  for (std::size_t i = 0; i < f.nets.size(); ++i) {
    passes[i].forward(f.nets[i], x);
    const Eigen::Index rows = passes[i].value().rows();
    value.middleRows(row, rows) = passes[i].value();
    for (int k = 0; k < dim_; ++k) tangent[k].middleRows(row, rows) = passes[i].tangent(k);
    row += rows;
  }
}

void ModelEnergy::backward_field(const FieldNet& f, const std::vector<nn::TangentPass>& passes,
                                 const Eigen::MatrixXd& vbar, const std::vector<Eigen::MatrixXd>& tbar,
                                 std::span<double> grad, std::size_t& offset) const {
  Eigen::Index row = 0;
  std::vector<Eigen::MatrixXd> t(static_cast<std::size_t>(dim_));
  for (std::size_t i = 0; i < f.nets.size(); ++i) {
    const Eigen::Index rows = f.nets[i].output_dim();
    for (int k = 0; k < dim_; ++k) t[k] = tbar[k].middleRows(row, rows);
    const std::size_t n = f.nets[i].parameter_count();
    passes[i].backward(vbar.middleRows(row, rows), t, grad.subspan(offset, n));
    offset += n;
    row += rows;
  }
}

Terms ModelEnergy::evaluate(const XpinnModel& model, std::span<double> grad) {
  const Eigen::Index n = x_.cols();
  const bool want_grad = !grad.empty();
  if (want_grad && grad.size() != model.parameter_count()) throw Error("gradient buffer has the wrong length");
  const bool singular = model.config().singular_enabled;

  // Forward: u and du/dx at every point.
  Eigen::MatrixXd u;
  std::vector<Eigen::MatrixXd> g;
  forward_field(model.continuous(), x_, pass_c_, u, g);

  pass_d_.resize(enriched_groups_.size());
  pass_s_.resize(enriched_groups_.size());
  std::vector<Eigen::MatrixXd> vd(enriched_groups_.size()), vs(enriched_groups_.size());
  std::vector<std::vector<Eigen::MatrixXd>> td(enriched_groups_.size()), ts(enriched_groups_.size());
  for (std::size_t k = 0; k < enriched_groups_.size(); ++k) {
    const Group& grp = enriched_groups_[k];
    if (grp.columns.empty()) continue;
    forward_field(model.enriched()[k], grp.x, pass_d_[k], vd[k], td[k]);
    if (singular) forward_field(model.singular()[k], grp.x, pass_s_[k], vs[k], ts[k]);
    for (Eigen::Index j = 0; j < grp.x.cols(); ++j) {
      const Eigen::Index c = grp.columns[static_cast<std::size_t>(j)];
      for (int i = 0; i < dim_; ++i) {
        u(i, c) += grp.d[j] * vd[k](i, j);
        for (int q = 0; q < dim_; ++q) g[q](i, c) += grp.d[j] * td[k][q](i, j) + grp.grad_d(q, j) * vd[k](i, j);
        if (singular)
          for (int b = 0; b < 4; ++b) {
            const Eigen::Index r = b * dim_ + i;
            u(i, c) += grp.e(b, j) * vs[k](r, j);
            for (int q = 0; q < dim_; ++q) g[q](i, c) += grp.e(b, j) * ts[k][q](r, j) + grp.grad_e[b](q, j) * vs[k](r, j);
          }
      }
    }
  }

  // Energy terms and adjoints of u and du/dx.
  Eigen::MatrixXd ubar = Eigen::MatrixXd::Zero(dim_, n);
  std::vector<Eigen::MatrixXd> gbar(static_cast<std::size_t>(dim_), Eigen::MatrixXd::Zero(dim_, n));
  std::vector<double> u_terms, v_terms, t_terms;
  u_terms.reserve(points_.domain.size());
  v_terms.reserve(static_cast<std::size_t>(n));
  const bool bar = material_.mode == elastic::Mode::bar_1d;
  const double mass = bar ? material_.area : 1.0;
  const double lam = material_.lambda(), mu = material_.mu();
  for (Eigen::Index c = 0; c < n; ++c) {
    const double w = weight_[c];
    switch (kind_[static_cast<std::size_t>(c)]) {
      case Kind::domain: {
        std::array<std::array<double, 2>, 2> gr{};
        for (int i = 0; i < dim_; ++i)
          for (int q = 0; q < dim_; ++q) gr[i][q] = g[q](i, c);
        u_terms.push_back(w * elastic::strain_energy_density(gr, material_));
        if (bar) {
          gbar[0](0, c) = w * material_.E * material_.area * gr[0][0];
        } else {
          const double tr = gr[0][0] + gr[1][1];
          const double s12 = mu * (gr[0][1] + gr[1][0]);
          gbar[0](0, c) = w * (lam * tr + 2.0 * mu * gr[0][0]);
          gbar[1](1, c) = w * (lam * tr + 2.0 * mu * gr[1][1]);
          gbar[1](0, c) = w * s12;
          gbar[0](1, c) = w * s12;
        }
        double work = 0.0;
        for (int i = 0; i < dim_; ++i) {
          work += mass * loads_.body_force[i] * u(i, c);
          ubar(i, c) = -w * mass * loads_.body_force[i];
        }
        v_terms.push_back(-w * work);
        break;
      }
      case Kind::traction: {
        const Vec2& t = loads_.tractions[static_cast<std::size_t>(set_[static_cast<std::size_t>(c)])].value;
        double work = 0.0;
        for (int i = 0; i < dim_; ++i) {
          work += t[i] * u(i, c);
          ubar(i, c) = -w * t[i];
        }
        v_terms.push_back(-w * work);
        break;
      }
      case Kind::dirichlet: {
        const auto& d = loads_.dirichlet[static_cast<std::size_t>(set_[static_cast<std::size_t>(c)])];
        const double pen = elastic::penalty_of(d, material_);
        for (int i = 0; i < dim_; ++i) {
          if (!d.components[static_cast<std::size_t>(i)]) continue;
          const double r = u(i, c) - d.value[i];
          t_terms.push_back(w * pen * std::abs(r));
          ubar(i, c) = w * pen * sign(r);
        }
        break;
      }
    }
  }
  Terms terms;
  terms.U = elastic::pairwise_sum(u_terms, 0, u_terms.size());
  terms.V = elastic::pairwise_sum(v_terms, 0, v_terms.size());
  terms.T = elastic::pairwise_sum(t_terms, 0, t_terms.size());
  if (!want_grad) return terms;

  // Reverse: route the adjoints into each network.
  std::fill(grad.begin(), grad.end(), 0.0);
  std::size_t offset = 0;
  backward_field(model.continuous(), pass_c_, ubar, gbar, grad, offset);
  std::vector<std::size_t> d_offsets, s_offsets;
  for (const auto& f : model.enriched()) {
    d_offsets.push_back(offset);
    offset += f.parameter_count();
  }
  for (const auto& f : model.singular()) {
    s_offsets.push_back(offset);
    offset += f.parameter_count();
  }
  for (std::size_t k = 0; k < enriched_groups_.size(); ++k) {
    const Group& grp = enriched_groups_[k];
    if (grp.columns.empty()) continue;
    const Eigen::Index m = grp.x.cols();
    Eigen::MatrixXd vbar(dim_, m);
    std::vector<Eigen::MatrixXd> tbar(static_cast<std::size_t>(dim_), Eigen::MatrixXd(dim_, m));
    for (Eigen::Index j = 0; j < m; ++j) {
      const Eigen::Index c = grp.columns[static_cast<std::size_t>(j)];
      for (int i = 0; i < dim_; ++i) {
        double v = ubar(i, c) * grp.d[j];
        for (int q = 0; q < dim_; ++q) {
          v += gbar[q](i, c) * grp.grad_d(q, j);
          tbar[q](i, j) = grp.d[j] * gbar[q](i, c);
        }
        vbar(i, j) = v;
      }
    }
    std::size_t off = d_offsets[k];
    backward_field(model.enriched()[k], pass_d_[k], vbar, tbar, grad, off);
    if (singular) {
      Eigen::MatrixXd sbar(4 * dim_, m);
      std::vector<Eigen::MatrixXd> stbar(static_cast<std::size_t>(dim_), Eigen::MatrixXd(4 * dim_, m));
      for (Eigen::Index j = 0; j < m; ++j) {
        const Eigen::Index c = grp.columns[static_cast<std::size_t>(j)];
        for (int b = 0; b < 4; ++b)
          for (int i = 0; i < dim_; ++i) {
            const Eigen::Index r = b * dim_ + i;
            double v = ubar(i, c) * grp.e(b, j);
            for (int q = 0; q < dim_; ++q) {
              v += gbar[q](i, c) * grp.grad_e[b](q, j);
              stbar[q](r, j) = grp.e(b, j) * gbar[q](i, c);
            }
            sbar(r, j) = v;
          }
      }
      std::size_t soff = s_offsets[k];
      backward_field(model.singular()[k], pass_s_[k], sbar, stbar, grad, soff);
    }
  }
  return terms;
}

TapeEnergy tape_energy(const XpinnModel& model, const elastic::PointSets& points, const elastic::LoadSpec& loads,
                       const elastic::ElasticMaterial& material) {
  ad::Tape tape;
  const auto theta0 = model.parameters();
  std::vector<ad::Var> theta;
  theta.reserve(theta0.size());
  for (double t : theta0) theta.push_back(tape.parameter(t));
  const int dim = model.dimension();
  auto field = [&](const quad::QuadraturePoint& p) {
    const auto d = displacement_dual<ad::Var>(model, std::span<const ad::Var>(theta), p.position, p.tag);
    elastic::FieldSample<ad::Var> s;
    for (int i = 0; i < dim; ++i) {
      s.u[i] = d[i].value;
      for (int j = 0; j < dim; ++j) s.grad[i][j] = d[i].partials[static_cast<std::size_t>(j)];
    }
    return s;
  };
  const auto terms = elastic::energy_loss<ad::Var>(field, points, loads, material);
  const ad::Var loss = terms.total();
  TapeEnergy out;
  out.terms = {terms.U.value(), terms.V.value(), terms.T.value()};
  out.gradient = tape.backward(loss);
  out.gradient.resize(theta0.size(), 0.0);
  return out;
}

}  // namespace xpinn::solver
