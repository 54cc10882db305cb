#pragma once

#include "xpinn/solver/model.hpp"

namespace xpinn::solver {

namespace detail {

template <class T>
std::vector<ad::Dual<T, 2>> field_net_dual(const FieldNet& f, std::span<const T> theta, std::size_t& offset,
                                           std::span<const ad::Dual<T, 2>> x) {
  using D = ad::Dual<T, 2>;
  std::vector<D> out;
  for (const nn::Mlp& net : f.nets) {
    const std::size_t n = net.parameter_count();
    std::vector<D> params;
    params.reserve(n);
    for (std::size_t i = 0; i < n; ++i) params.emplace_back(theta[offset + i], D::zero_partials());
    offset += n;
    const auto y = nn::forward_generic<D>(net, std::span<const D>(params), x);
    out.insert(out.end(), y.begin(), y.end());
  }
  return out;
}

template <class T>
ad::Dual<T, 2> constant_dual(double v, const Vec2& g) {
  return ad::Dual<T, 2>(T(v), {T(g.x()), T(g.y())});
}

}  // namespace detail

template <class T>
std::array<ad::Dual<T, 2>, 2> displacement_dual(const XpinnModel& model, std::span<const T> theta, const Vec2& p,
                                                const geom::RegionTag& tag) {
  using D = ad::Dual<T, 2>;
  const int dim = model.dimension();
  if (theta.size() != model.parameter_count()) throw Error("parameter vector has the wrong length");
  std::array<D, 2> xs{D::variable(T(p.x()), 0), D::variable(T(p.y()), 1)};
  const std::span<const D> x(xs.data(), static_cast<std::size_t>(dim));

  std::size_t offset = 0;
  std::array<D, 2> u{D(0.0), D(0.0)};
  const auto uc = detail::field_net_dual<T>(model.continuous(), theta, offset, x);
  for (int i = 0; i < dim; ++i) u[i] = uc[i];

  const std::size_t enriched_start = offset;
  std::size_t singular_start = enriched_start;
  for (const auto& f : model.enriched()) singular_start += f.parameter_count();

  if (tag.enriched()) {
    const std::size_t k = model.enriched_net_for(tag.crack);
    std::size_t off = enriched_start;
    for (std::size_t j = 0; j < k; ++j) off += model.enriched()[j].parameter_count();
    const auto ud = detail::field_net_dual<T>(model.enriched()[k], theta, off, x);
    const EnrichmentSample e = model.enrichment(tag.crack, p, tag.side);
    const D d = detail::constant_dual<T>(e.value, e.gradient);
    for (int i = 0; i < dim; ++i) u[i] += d * ud[i];

    if (model.config().singular_enabled && dim == 2) {
      std::size_t soff = singular_start;
      for (std::size_t j = 0; j < k; ++j) soff += model.singular()[j].parameter_count();
      const auto us = detail::field_net_dual<T>(model.singular()[k], theta, soff, x);
      const auto ch = model.singular_channels(tag.crack, p, tag.side);
      for (int b = 0; b < 4; ++b) {
        const D eb = detail::constant_dual<T>(ch.value[b], ch.gradient[b]);
        for (int i = 0; i < dim; ++i) u[i] += eb * us[b * dim + i];
      }
    }
  }
  return u;
}

}  // namespace xpinn::solver
