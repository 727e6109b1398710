#include "ess/aomoto.hpp"
#include "ess/errors.hpp"
#include "ess/modz.hpp"
#include "ess/pages.hpp"

namespace ess {

MonodromyReport monodromy_report(const EquivariantComplex& input, std::size_t k_max) {
  if (!(input.group().is_free_abelian() && input.group().rank() == 1))
    throw InputError("the monodromy report needs G = Z, got " + input.group().to_string());
  const EquivariantComplex c =
      input.field().is_field() ? input : change_field(input, FieldDescriptor::rationals());
  const std::size_t top = std::min(k_max, c.top_degree());
  const AomotoData aomoto = aomoto_betti(c, c.field());
  const PageTable einf = einf_window(c, 2);
  MonodromyReport rep;
  bool snf = true, pages = true, beta = true;
  for (std::size_t q = 0; q <= top; ++q) {
    MonodromyDegree d;
    d.q = q;
    d.beta = aomoto.beta[q];
    d.decomposition = homology_decomposition(c, q);
    d.snf_trivial = d.decomposition.free_rank == 0;
    for (auto b : d.decomposition.t_minus_1_blocks)
      if (b > 1) d.snf_trivial = false;
    d.pages_trivial = einf.dim(1, q) == 0;
    snf = snf && d.snf_trivial;
    pages = pages && d.pages_trivial;
    beta = beta && d.beta == 0;
    if (snf != pages || pages != beta)
      throw CrossCheckFailure("monodromy conditions disagree up to degree " + std::to_string(q));
    rep.verdicts.push_back(snf);
    rep.degrees.push_back(std::move(d));
  }
  return rep;
}

}  // namespace ess
