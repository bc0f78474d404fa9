#include "starres/module.hpp"

#include <algorithm>

namespace starres {

GradedFreeModule::GradedFreeModule(WeightedRing ring,
                                   std::vector<std::string> labels,
                                   std::vector<long> degrees)
    : ring_(std::move(ring)), labels_(std::move(labels)),
      degrees_(std::move(degrees)) {
    if (labels_.size() != degrees_.size())
        throw ModuleError("label/degree count mismatch");
    for (size_t i = 0; i < labels_.size(); ++i) {
        auto [it, inserted] = index_.emplace(labels_[i], i);
        if (!inserted)
            throw ModuleError("duplicate generator label '" + labels_[i] + "'");
    }
}

ModulePtr GradedFreeModule::make(WeightedRing ring,
                                 std::vector<std::string> labels,
                                 std::vector<long> degrees) {
    return std::make_shared<const GradedFreeModule>(
        std::move(ring), std::move(labels), std::move(degrees));
}

ModulePtr GradedFreeModule::base_ring(const WeightedRing& ring) {
    return make(ring, {"1"}, {0});
}

long GradedFreeModule::max_degree() const {
    long m = 0;
    for (long d : degrees_) m = std::max(m, d);
    return m;
}

size_t GradedFreeModule::index_of(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end())
        throw ModuleError("no generator labelled '" + label + "'");
    return it->second;
}

std::optional<size_t> GradedFreeModule::find(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

PieceBasis::PieceBasis(const GradedFreeModule& module, long degree)
    : degree_(degree) {
    for (size_t g = 0; g < module.rank(); ++g) {
        for (const auto& m :
             monomials_of_weighted_degree(module.ring(), degree - module.degree(g))) {
            index_.emplace(std::make_pair(g, m.exponents()), elems_.size());
            elems_.emplace_back(g, m);
        }
    }
}

size_t PieceBasis::index_of(size_t gen, const Monomial& m) const {
    auto it = index_.find(std::make_pair(gen, m.exponents()));
    if (it == index_.end())
        throw ModuleError("basis element not in graded piece");
    return it->second;
}

GradedVector::GradedVector(ModulePtr module)
    : module_(std::move(module)),
      coords_(module_->rank(), Polynomial(module_->ring())) {}

GradedVector::GradedVector(ModulePtr module, std::vector<Polynomial> coords)
    : module_(std::move(module)), coords_(std::move(coords)) {
    if (coords_.size() != module_->rank())
        throw ModuleError("coordinate count does not match module rank");
    for (const auto& p : coords_)
        if (!(p.ring() == module_->ring()))
            throw ModuleError("coordinate ring mismatch");
}

void GradedVector::set_coord(size_t i, Polynomial p) {
    if (!(p.ring() == module_->ring()))
        throw ModuleError("coordinate ring mismatch");
    coords_[i] = std::move(p);
}

bool GradedVector::is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(),
                       [](const Polynomial& p) { return p.is_zero(); });
}

bool GradedVector::is_homogeneous_of_degree(long d) const {
    for (size_t i = 0; i < coords_.size(); ++i)
        if (!coords_[i].is_homogeneous_of_degree(d - module_->degree(i)))
            return false;
    return true;
}

std::optional<long> GradedVector::homogeneous_degree() const {
    std::optional<long> d;
    for (size_t i = 0; i < coords_.size(); ++i) {
        if (coords_[i].is_zero()) continue;
        if (!coords_[i].is_homogeneous()) return std::nullopt;
        long di = coords_[i].homogeneous_degree() + module_->degree(i);
        if (d && *d != di) return std::nullopt;
        d = di;
    }
    return d;
}

GradedVector GradedVector::operator-() const {
    GradedVector r = *this;
    for (auto& p : r.coords_) p = -p;
    return r;
}

GradedVector& GradedVector::operator+=(const GradedVector& o) {
    if (!(*module_ == *o.module_))
        throw ModuleError("vector module mismatch");
    for (size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
    return *this;
}

GradedVector& GradedVector::operator-=(const GradedVector& o) {
    if (!(*module_ == *o.module_))
        throw ModuleError("vector module mismatch");
    for (size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
    return *this;
}

GradedVector GradedVector::times(const Polynomial& p) const {
    GradedVector r = *this;
    for (auto& c : r.coords_) c = c * p;
    return r;
}

bool GradedVector::operator==(const GradedVector& o) const {
    return *module_ == *o.module_ && coords_ == o.coords_;
}

Vector GradedVector::piece_coords(const PieceBasis& basis) const {
    const Field& f = module_->ring().field();
    if (!is_homogeneous_of_degree(basis.degree()))
        throw ModuleError("vector is not homogeneous of the piece degree");
    Vector out(basis.dim(), Scalar(0, f));
    for (size_t g = 0; g < coords_.size(); ++g)
        for (const auto& [m, c] : coords_[g].terms())
            out[basis.index_of(g, m)] = c;
    return out;
}

GradedVector GradedVector::from_piece_coords(ModulePtr module,
                                             const PieceBasis& basis,
                                             const Vector& coords) {
    if (coords.size() != basis.dim())
        throw ModuleError("piece coordinate count mismatch");
    GradedVector v(module);
    std::vector<std::vector<Polynomial::Term>> terms(module->rank());
    for (size_t k = 0; k < coords.size(); ++k) {
        if (coords[k].is_zero()) continue;
        const auto& [g, m] = basis.elements()[k];
        terms[g].emplace_back(m, coords[k]);
    }
    for (size_t g = 0; g < module->rank(); ++g)
        if (!terms[g].empty())
            v.set_coord(g, Polynomial(module->ring(), std::move(terms[g])));
    return v;
}

ModuleMap::ModuleMap(ModulePtr source, ModulePtr target,
                     std::vector<Polynomial> entries)
    : source_(std::move(source)), target_(std::move(target)),
      entries_(std::move(entries)) {
    if (entries_.size() != source_->rank() * target_->rank())
        throw ModuleError("entry count does not match map shape");
    if (!(source_->ring() == target_->ring()))
        throw ModuleError("source/target ring mismatch");
    check_homogeneous();
}

ModuleMap ModuleMap::zero(ModulePtr source, ModulePtr target) {
    std::vector<Polynomial> e(source->rank() * target->rank(),
                              Polynomial(source->ring()));
    return ModuleMap(std::move(source), std::move(target), std::move(e));
}

ModuleMap ModuleMap::identity(ModulePtr module) {
    ModuleMap m = zero(module, module);
    for (size_t i = 0; i < module->rank(); ++i)
        m.entries_[i * module->rank() + i] =
            Polynomial::constant(1, module->ring());
    return m;
}

void ModuleMap::set_entry(size_t i, size_t j, Polynomial p) {
    long want = source_->degree(j) - target_->degree(i);
    if (!p.is_zero() && !p.is_homogeneous_of_degree(want))
        throw ModuleError("map entry (" + target_->label(i) + ", " +
                          source_->label(j) + ") = " + p.str() +
                          " is not homogeneous of degree " +
                          std::to_string(want));
    entries_[i * source_->rank() + j] = std::move(p);
}

void ModuleMap::check_homogeneous() const {
    for (size_t i = 0; i < target_->rank(); ++i)
        for (size_t j = 0; j < source_->rank(); ++j) {
            const Polynomial& p = entry(i, j);
            long want = source_->degree(j) - target_->degree(i);
            if (!p.is_zero() && !p.is_homogeneous_of_degree(want))
                throw ModuleError(
                    "map entry (" + target_->label(i) + ", " +
                    source_->label(j) + ") = " + p.str() +
                    " is not homogeneous of degree " + std::to_string(want));
        }
}

bool ModuleMap::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const Polynomial& p) { return p.is_zero(); });
}

GradedVector ModuleMap::column(size_t j) const {
    GradedVector v(target_);
    for (size_t i = 0; i < target_->rank(); ++i) v.set_coord(i, entry(i, j));
    return v;
}

GradedVector ModuleMap::apply(const GradedVector& v) const {
    if (!(*v.module() == *source_))
        throw ModuleError("apply: vector not in source module");
    GradedVector out(target_);
    for (size_t i = 0; i < target_->rank(); ++i) {
        Polynomial acc(source_->ring());
        for (size_t j = 0; j < source_->rank(); ++j) {
            if (entry(i, j).is_zero() || v.coord(j).is_zero()) continue;
            acc += entry(i, j) * v.coord(j);
        }
        out.set_coord(i, std::move(acc));
    }
    return out;
}

ModuleMap ModuleMap::compose(const ModuleMap& inner) const {
    if (!(*inner.target_ == *source_))
        throw ModuleError("compose: maps are not composable");
    ModuleMap out = zero(inner.source_, target_);
    for (size_t i = 0; i < target_->rank(); ++i)
        for (size_t k = 0; k < source_->rank(); ++k) {
            const Polynomial& a = entry(i, k);
            if (a.is_zero()) continue;
            for (size_t j = 0; j < inner.source_->rank(); ++j) {
                const Polynomial& b = inner.entry(k, j);
                if (b.is_zero()) continue;
                out.entries_[i * inner.source_->rank() + j] += a * b;
            }
        }
    return out;
}

ModuleMap ModuleMap::operator-() const {
    ModuleMap r = *this;
    for (auto& p : r.entries_) p = -p;
    return r;
}

bool ModuleMap::operator==(const ModuleMap& o) const {
    return *source_ == *o.source_ && *target_ == *o.target_ &&
           entries_ == o.entries_;
}

Matrix ModuleMap::piece_matrix(long d) const {
    return piece_matrix(PieceBasis(*source_, d), PieceBasis(*target_, d));
}

Matrix ModuleMap::piece_matrix(const PieceBasis& src,
                               const PieceBasis& tgt) const {
    Matrix a(tgt.dim(), src.dim(), source_->ring().field());
    for (size_t col = 0; col < src.dim(); ++col) {
        const auto& [j, m] = src.elements()[col];
        for (size_t i = 0; i < target_->rank(); ++i) {
            const Polynomial& e = entry(i, j);
            for (const auto& [em, c] : e.terms())
                a.at(tgt.index_of(i, em * m), col) = c;
        }
    }
    return a;
}

bool ModuleMap::image_in_max_ideal() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Polynomial& p) {
        return p.constant_term().is_zero();
    });
}

ModulePtr direct_sum(const std::vector<ModulePtr>& parts) {
    if (parts.empty()) throw ModuleError("direct_sum of no parts");
    std::vector<std::string> labels;
    std::vector<long> degrees;
    for (const auto& p : parts) {
        if (!(p->ring() == parts[0]->ring()))
            throw ModuleError("direct_sum ring mismatch");
        labels.insert(labels.end(), p->labels().begin(), p->labels().end());
        degrees.insert(degrees.end(), p->degrees().begin(),
                       p->degrees().end());
    }
    return GradedFreeModule::make(parts[0]->ring(), std::move(labels),
                                  std::move(degrees));
}

ModuleMap block_inclusion(ModulePtr whole, size_t begin, size_t count,
                          ModulePtr block) {
    if (begin + count > whole->rank() || count != block->rank())
        throw ModuleError("block_inclusion: bad block bounds");
    ModuleMap inc = ModuleMap::zero(block, whole);
    for (size_t j = 0; j < count; ++j)
        inc.set_entry(begin + j, j, Polynomial::constant(1, whole->ring()));
    return inc;
}

std::pair<ModulePtr, ModuleMap> coordinate_submodule(
    ModulePtr whole, const std::vector<size_t>& gens,
    const std::vector<std::string>& new_labels) {
    std::vector<std::string> labels;
    std::vector<long> degrees;
    for (size_t k = 0; k < gens.size(); ++k) {
        size_t g = gens[k];
        if (g >= whole->rank())
            throw ModuleError("coordinate_submodule: index out of range");
        labels.push_back(new_labels.empty() ? whole->label(g) : new_labels[k]);
        degrees.push_back(whole->degree(g));
    }
    auto sub = GradedFreeModule::make(whole->ring(), std::move(labels),
                                      std::move(degrees));
    ModuleMap inc = ModuleMap::zero(sub, whole);
    for (size_t k = 0; k < gens.size(); ++k)
        inc.set_entry(gens[k], k, Polynomial::constant(1, whole->ring()));
    return {sub, inc};
}

}  // namespace starres
