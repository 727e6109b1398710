#include "ess/complex.hpp"

#include <cctype>
#include <numeric>

#include "ess/errors.hpp"
#include "ess/snf.hpp"

namespace ess {

// ---------------------------------------------------------------- words

std::size_t Presentation::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < generators.size(); ++i)
    if (generators[i] == name) return i;
  throw InputError("unknown generator '" + std::string(name) + "'");
}

namespace {

class WordParser {
 public:
  WordParser(std::string_view text, const std::vector<std::string>& gens) : text_(text), gens_(gens) {}

  FreeWord run() {
    FreeWord w = sequence();
    if (pos_ != text_.size())
      fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return w;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("cannot parse word '" + std::string(text_) + "': " + what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  long power() {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != '^') return 1;
    ++pos_;
    bool neg = false;
    if (pos_ < text_.size() && text_[pos_] == '-') {
      neg = true;
      ++pos_;
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an exponent after '^'");
    long k = std::stol(std::string(text_.substr(start, pos_ - start)));
    return neg ? -k : k;
  }

  static void append_power(FreeWord& out, const FreeWord& w, long k) {
    const FreeWord unit = k < 0 ? inverse_word(w) : w;
    for (long i = 0; i < (k < 0 ? -k : k); ++i) out.insert(out.end(), unit.begin(), unit.end());
  }

  FreeWord sequence() {
    FreeWord out;
    while (true) {
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] == ')') return out;
      const char c = text_[pos_];
      if (c == '(') {
        ++pos_;
        FreeWord inner = sequence();
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != ')') fail("missing ')'");
        ++pos_;
        append_power(out, inner, power());
        continue;
      }
      if (!std::isalpha(static_cast<unsigned char>(c))) fail("unexpected '" + std::string(1, c) + "'");
      const std::size_t start = pos_;
      const bool inverse = std::isupper(static_cast<unsigned char>(c));
      std::string name(1, static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
        name += text_[pos_++];
      std::size_t idx = gens_.size();
      for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i] == name) idx = i;
      if (idx == gens_.size())
        fail("unknown generator token '" + std::string(text_.substr(start, pos_ - start)) + "'");
      const int letter = static_cast<int>(idx) + 1;
      append_power(out, {inverse ? -letter : letter}, power());
    }
  }

  std::string_view text_;
  const std::vector<std::string>& gens_;
  std::size_t pos_ = 0;
};

}  // namespace

FreeWord parse_word(std::string_view text, const std::vector<std::string>& generators) {
  return WordParser(text, generators).run();
}

std::string word_to_string(const FreeWord& w, const std::vector<std::string>& generators) {
  std::string out;
  for (int l : w) {
    std::string name = generators.at(static_cast<std::size_t>(std::abs(l)) - 1);
    if (l < 0 && !name.empty()) name[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
    out += name;
  }
  return out;
}

FreeWord inverse_word(const FreeWord& w) {
  FreeWord out(w.rbegin(), w.rend());
  for (auto& l : out) l = -l;
  return out;
}

std::vector<FoxTerm> fox_derivative(const FreeWord& w, std::size_t i, std::size_t arity) {
  if (i >= arity) throw InputError("Fox derivative index out of range");
  const int target = static_cast<int>(i) + 1;
  std::vector<FoxTerm> out;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (static_cast<std::size_t>(std::abs(w[k])) > arity)
      throw InputError("word letter outside the presentation's generators");
    if (w[k] == target) out.push_back({1, FreeWord(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k))});
    if (w[k] == -target)
      out.push_back({-1, FreeWord(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k + 1))});
  }
  return out;
}

// ---------------------------------------------------------- epimorphism

bool integer_images_generate(const std::vector<Exponent>& images, std::size_t rank) {
  if (rank == 0) return true;
  if (images.empty()) return false;
  Matrix<mpz_class> m(images.size(), rank, mpz_class(0));
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t j = 0; j < rank; ++j) m(i, j) = static_cast<long>(images[i].at(j));
  auto res = smith_normal_form<IntegerTraits>(m, mpz_class(0), mpz_class(1));
  if (res.rank != rank) return false;
  for (const auto& d : res.diagonal)
    if (d != 1) return false;
  return true;
}

Exponent Epimorphism::image_of(const FreeWord& w) const {
  Exponent e(target.arity(), 0);
  for (int l : w) {
    const auto& img = images.at(static_cast<std::size_t>(std::abs(l)) - 1);
    for (std::size_t j = 0; j < e.size(); ++j) e[j] += l > 0 ? img[j] : -img[j];
  }
  if (target.is_cyclic()) {
    const auto m = static_cast<std::int64_t>(target.order());
    e[0] = ((e[0] % m) + m) % m;
  }
  return e;
}

void Epimorphism::check_surjective() const {
  for (const auto& img : images)
    if (img.size() != target.arity())
      throw InputError("image vector length does not match " + target.to_string());
  if (target.is_free_abelian()) {
    if (!integer_images_generate(images, target.rank()))
      throw InputError("images do not generate " + target.to_string() + " (not surjective)");
    return;
  }
  std::int64_t g = static_cast<std::int64_t>(target.order());
  for (const auto& img : images) g = std::gcd(g, img[0]);
  if (g != 1) throw InputError("images do not generate " + target.to_string() + " (not surjective)");
}

void Epimorphism::check_relators(const Presentation& p) const {
  if (images.size() != p.arity())
    throw InputError("epimorphism gives " + std::to_string(images.size()) + " images for " +
                     std::to_string(p.arity()) + " generators");
  for (const auto& r : p.relators) {
    Exponent e = image_of(r);
    for (auto v : e)
      if (v != 0)
        throw InputError("relator " + word_to_string(r, p.generators) +
                         " does not map to the identity of " + target.to_string());
  }
}

GroupRingElem word_image(const FreeWord& w, const Epimorphism& nu, const FieldDescriptor& f) {
  return GroupRingElem::group_element(nu.target, f, nu.image_of(w));
}

GroupRingElem fox_image(const std::vector<FoxTerm>& terms, const Epimorphism& nu,
                        const FieldDescriptor& f) {
  GroupRingElem out(nu.target, f);
  for (const auto& t : terms)
    out.add_term(nu.image_of(t.prefix), FieldElem::integer(f, t.sign));
  return out;
}

// -------------------------------------------------------------- complex

namespace {

GRMatrix gr_zeros(std::size_t r, std::size_t c, const GroupDescriptor& g, const FieldDescriptor& f) {
  if (r == 0 || c == 0) return GRMatrix::shape(r, c);
  return GRMatrix(r, c, GroupRingElem(g, f));
}

GRMatrix gr_multiply(const GRMatrix& a, const GRMatrix& b, const GroupDescriptor& g,
                     const FieldDescriptor& f) {
  return multiply(a, b, GroupRingElem(g, f));
}

bool gr_is_zero(const GRMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) return false;
  return true;
}

template <class F>
GRMatrix gr_map(const GRMatrix& m, const GroupDescriptor& g, const FieldDescriptor& f, F fn) {
  GRMatrix out = gr_zeros(m.rows(), m.cols(), g, f);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = fn(m(i, j));
  return out;
}

void check_shapes(const std::vector<std::size_t>& dims, const std::vector<GRMatrix>& bds,
                  const GroupDescriptor& g, const FieldDescriptor& f, const char* what) {
  if (bds.size() + 1 != dims.size())
    throw InputError(std::string(what) + ": expected " + std::to_string(dims.size() - 1) +
                     " boundary matrices, got " + std::to_string(bds.size()));
  for (std::size_t q = 1; q < dims.size(); ++q) {
    const GRMatrix& m = bds[q - 1];
    if (m.rows() != dims[q] || m.cols() != dims[q - 1])
      throw InputError(std::string(what) + ": boundary in degree " + std::to_string(q) +
                       " has shape " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                       ", expected " + std::to_string(dims[q]) + "x" + std::to_string(dims[q - 1]));
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (!(m(i, j).group() == g))
          throw DescriptorMismatch(std::string(what) + ": entry over group " +
                                   m(i, j).group().to_string() + ", expected " + g.to_string());
        if (!(m(i, j).field() == f))
          throw DescriptorMismatch(std::string(what) + ": entry over " + m(i, j).field().to_string() +
                                   ", expected " + f.to_string());
      }
  }
}

}  // namespace

void check_composition(const std::vector<GRMatrix>& boundaries, const GroupDescriptor& g,
                       const FieldDescriptor& f) {
  for (std::size_t q = 1; q < boundaries.size(); ++q) {
    // Mat(d_{q+1}) * Mat(d_q)
    if (!gr_is_zero(gr_multiply(boundaries[q], boundaries[q - 1], g, f)))
      throw CompositionError("boundary composition d_" + std::to_string(q) + " o d_" +
                                 std::to_string(q + 1) + " is not zero",
                             static_cast<int>(q + 1));
  }
}

EquivariantComplex::EquivariantComplex(FieldDescriptor field, GroupDescriptor group,
                                       std::vector<std::size_t> dims,
                                       std::vector<GRMatrix> boundaries,
                                       std::optional<std::vector<GRMatrix>> integral,
                                       std::string provenance)
    : field_(field),
      group_(group),
      dims_(std::move(dims)),
      boundaries_(std::move(boundaries)),
      integral_(std::move(integral)),
      provenance_(std::move(provenance)) {
  if (dims_.empty() || dims_[0] != 1)
    throw InputError("a complex needs exactly one 0-cell (dims[0] = 1)");
  check_shapes(dims_, boundaries_, group_, field_, "complex");
  if (!boundaries_.empty()) {
    const GRMatrix& d1 = boundaries_[0];
    for (std::size_t i = 0; i < d1.rows(); ++i)
      if (!augmentation(d1(i, 0)).is_zero())
        throw InputError("boundary of 1-cell " + std::to_string(i) + " (" + d1(i, 0).to_string() +
                         ") has nonzero augmentation");
  }
  check_composition(boundaries_, group_, field_);
  if (integral_) {
    const FieldDescriptor z = FieldDescriptor::integers();
    check_shapes(dims_, *integral_, group_, z, "integral shadow");
    for (std::size_t q = 0; q < boundaries_.size(); ++q) {
      const GRMatrix& a = (*integral_)[q];
      for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
          if (!(a(i, j).converted(field_) == boundaries_[q](i, j)))
            throw InputError("integral shadow disagrees with the boundary in degree " +
                             std::to_string(q + 1));
    }
  }
}

GRMatrix EquivariantComplex::boundary(std::size_t q) const {
  if (q == 0 || q > boundaries_.size()) return gr_zeros(dim(q), q == 0 ? 0 : dim(q - 1), group_, field_);
  return boundaries_[q - 1];
}

GRMatrix EquivariantComplex::integral_boundary(std::size_t q) const {
  if (!integral_) throw UnsupportedInput("complex has no integral shadow");
  if (q == 0 || q > integral_->size())
    return gr_zeros(dim(q), q == 0 ? 0 : dim(q - 1), group_, FieldDescriptor::integers());
  return (*integral_)[q - 1];
}

EquivariantComplex presentation_complex(const Presentation& p, const Epimorphism& nu,
                                        const FieldDescriptor& field) {
  nu.check_relators(p);
  nu.check_surjective();
  const FieldDescriptor z = FieldDescriptor::integers();
  const GroupDescriptor& g = nu.target;
  const std::size_t n = p.arity(), r = p.relators.size();
  std::vector<std::size_t> dims{1, n};
  std::vector<GRMatrix> integral;
  GRMatrix d1 = gr_zeros(n, 1, g, z);
  for (std::size_t i = 0; i < n; ++i)
    d1(i, 0) = GroupRingElem::group_element(g, z, nu.images[i]) - GroupRingElem::one(g, z);
  integral.push_back(d1);
  if (r > 0) {
    dims.push_back(r);
    GRMatrix d2 = gr_zeros(r, n, g, z);
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t i = 0; i < n; ++i)
        d2(j, i) = fox_image(fox_derivative(p.relators[j], i, n), nu, z);
    integral.push_back(d2);
  }
  std::vector<GRMatrix> bds;
  for (const auto& m : integral)
    bds.push_back(gr_map(m, g, field, [&](const GroupRingElem& e) { return e.converted(field); }));
  EquivariantComplex c(field, g, dims, bds, integral, "presentation");
  c.set_presentation(p);
  return c;
}

EquivariantComplex complex_from_matrices(const FieldDescriptor& field, const GroupDescriptor& group,
                                         const std::vector<std::size_t>& dims,
                                         const std::vector<GRMatrix>& boundaries) {
  std::optional<std::vector<GRMatrix>> integral;
  if (field.kind() == FieldKind::Integers) integral = boundaries;
  return EquivariantComplex(field, group, dims, boundaries, integral, "matrices");
}

EquivariantComplex attach_cells(const EquivariantComplex& c, const GRMatrix& boundary,
                                const std::optional<GRMatrix>& integral_boundary) {
  std::vector<std::size_t> dims = c.dims();
  dims.push_back(boundary.rows());
  std::vector<GRMatrix> bds;
  for (std::size_t q = 1; q <= c.top_degree(); ++q) bds.push_back(c.boundary(q));
  bds.push_back(boundary);
  std::optional<std::vector<GRMatrix>> integral;
  if (c.has_integral_shadow() && integral_boundary) {
    integral.emplace();
    for (std::size_t q = 1; q <= c.top_degree(); ++q) integral->push_back(c.integral_boundary(q));
    integral->push_back(*integral_boundary);
  }
  EquivariantComplex out(c.field(), c.group(), dims, bds, integral, c.provenance());
  if (c.presentation()) out.set_presentation(*c.presentation());
  return out;
}

EquivariantComplex base_change(const EquivariantComplex& c, const GroupDescriptor& target,
                               const std::vector<Exponent>& images) {
  const GroupDescriptor& src = c.group();
  if (images.size() != src.arity())
    throw InputError("base change needs " + std::to_string(src.arity()) + " generator images");
  Epimorphism f{target, images};
  f.check_surjective();
  if (src.is_cyclic()) {
    // t^m = 1 must map to the identity.
    Exponent e(target.arity());
    for (std::size_t j = 0; j < e.size(); ++j)
      e[j] = images[0][j] * static_cast<std::int64_t>(src.order());
    if (target.is_cyclic()) e[0] %= static_cast<std::int64_t>(target.order());
    for (auto v : e)
      if (v != 0) throw InputError("homomorphism " + src.to_string() + " -> " + target.to_string() +
                                   " is not well defined");
  }
  auto push = [&](const GroupRingElem& e) { return e.mapped(target, images); };
  std::vector<GRMatrix> bds;
  for (std::size_t q = 1; q <= c.top_degree(); ++q)
    bds.push_back(gr_map(c.boundary(q), target, c.field(), push));
  std::optional<std::vector<GRMatrix>> integral;
  if (c.has_integral_shadow()) {
    integral.emplace();
    for (std::size_t q = 1; q <= c.top_degree(); ++q)
      integral->push_back(gr_map(c.integral_boundary(q), target, FieldDescriptor::integers(), push));
  }
  EquivariantComplex out(c.field(), target, c.dims(), bds, integral, c.provenance());
  if (c.presentation()) out.set_presentation(*c.presentation());
  return out;
}

EquivariantComplex change_field(const EquivariantComplex& c, const FieldDescriptor& target) {
  if (c.field() == target) return c;
  std::vector<GRMatrix> bds;
  for (std::size_t q = 1; q <= c.top_degree(); ++q) {
    const GRMatrix src = c.has_integral_shadow() ? c.integral_boundary(q) : c.boundary(q);
    bds.push_back(gr_map(src, c.group(), target,
                         [&](const GroupRingElem& e) { return e.converted(target); }));
  }
  std::optional<std::vector<GRMatrix>> integral;
  if (c.has_integral_shadow()) {
    integral.emplace();
    for (std::size_t q = 1; q <= c.top_degree(); ++q) integral->push_back(c.integral_boundary(q));
  }
  EquivariantComplex out(target, c.group(), c.dims(), bds, integral, c.provenance());
  if (c.presentation()) out.set_presentation(*c.presentation());
  return out;
}

namespace {

FMatrix augment(const GRMatrix& m, const FieldDescriptor& target) {
  FMatrix out = zeros(m.rows(), m.cols(), target);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = convert_scalar(augmentation(m(i, j)), target);
  return out;
}

FieldDescriptor working_field(const FieldDescriptor& f) {
  return f.kind() == FieldKind::Integers ? FieldDescriptor::rationals() : f;
}

std::vector<std::size_t> betti_from(const EquivariantComplex& c,
                                    const std::function<FMatrix(std::size_t)>& bd) {
  const std::size_t top = c.top_degree();
  std::vector<std::size_t> ranks(top + 2, 0);
  for (std::size_t q = 1; q <= top; ++q) ranks[q] = rank_exact(bd(q));
  std::vector<std::size_t> out;
  for (std::size_t q = 0; q <= top; ++q) out.push_back(c.dim(q) - ranks[q] - ranks[q + 1]);
  return out;
}

}  // namespace

FMatrix augmented_boundary(const EquivariantComplex& c, std::size_t q) {
  return augment(c.boundary(q), working_field(c.field()));
}

FMatrix augmented_integral_boundary(const EquivariantComplex& c, std::size_t q,
                                    const FieldDescriptor& target) {
  return augment(c.integral_boundary(q), target);
}

std::vector<std::size_t> betti_numbers(const EquivariantComplex& c) {
  return betti_from(c, [&](std::size_t q) { return augmented_boundary(c, q); });
}

std::vector<std::size_t> betti_numbers_over(const EquivariantComplex& c,
                                            const FieldDescriptor& target) {
  if (!c.has_integral_shadow()) {
    if (c.field() == target) return betti_numbers(c);
    throw UnsupportedInput("Betti numbers over " + target.to_string() +
                           " need integer boundary data");
  }
  return betti_from(c, [&](std::size_t q) { return augmented_integral_boundary(c, q, target); });
}

std::vector<std::array<std::size_t, 3>> minimality_violations(const EquivariantComplex& c) {
  std::vector<std::array<std::size_t, 3>> out;
  for (std::size_t q = 1; q <= c.top_degree(); ++q) {
    const GRMatrix m = c.has_integral_shadow() ? c.integral_boundary(q) : c.boundary(q);
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (!augmentation(m(i, j)).is_zero()) out.push_back({q, i, j});
  }
  return out;
}

bool is_minimal(const EquivariantComplex& c) { return minimality_violations(c).empty(); }

}  // namespace ess
