#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "starres/linalg.hpp"
#include "starres/ring.hpp"

namespace starres {

struct ModuleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class GradedFreeModule;
using ModulePtr = std::shared_ptr<const GradedFreeModule>;

/// Free graded module over the ring: an ordered list of labelled generators
/// with integer degree shifts, M = (+) R(-d_i).
class GradedFreeModule {
public:
    GradedFreeModule(WeightedRing ring, std::vector<std::string> labels,
                     std::vector<long> degrees);

    static ModulePtr make(WeightedRing ring, std::vector<std::string> labels,
                          std::vector<long> degrees);
    /// Rank-1 module R with generator "1" in degree 0.
    static ModulePtr base_ring(const WeightedRing& ring);

    const WeightedRing& ring() const { return ring_; }
    size_t rank() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<long>& degrees() const { return degrees_; }
    const std::string& label(size_t i) const { return labels_[i]; }
    long degree(size_t i) const { return degrees_[i]; }
    long max_degree() const;  // 0 for the zero module

    size_t index_of(const std::string& label) const;
    std::optional<size_t> find(const std::string& label) const;

    bool operator==(const GradedFreeModule& o) const {
        return ring_ == o.ring_ && labels_ == o.labels_ && degrees_ == o.degrees_;
    }

private:
    WeightedRing ring_;
    std::vector<std::string> labels_;
    std::vector<long> degrees_;
    std::map<std::string, size_t> index_;
};

/// Basis of the degree-d graded piece of a module: pairs (generator index,
/// monomial), ordered generator-major then canonical monomial order.
class PieceBasis {
public:
    PieceBasis(const GradedFreeModule& module, long degree);

    long degree() const { return degree_; }
    size_t dim() const { return elems_.size(); }
    const std::vector<std::pair<size_t, Monomial>>& elements() const {
        return elems_;
    }
    /// Position of (generator, monomial) in this basis.
    size_t index_of(size_t gen, const Monomial& m) const;

private:
    long degree_;
    std::vector<std::pair<size_t, Monomial>> elems_;
    std::map<std::pair<size_t, std::array<unsigned, 3>>, size_t> index_;
};

/// Element of a free graded module: one polynomial coordinate per generator.
class GradedVector {
public:
    explicit GradedVector(ModulePtr module);
    GradedVector(ModulePtr module, std::vector<Polynomial> coords);

    const ModulePtr& module() const { return module_; }
    const std::vector<Polynomial>& coords() const { return coords_; }
    const Polynomial& coord(size_t i) const { return coords_[i]; }
    void set_coord(size_t i, Polynomial p);

    bool is_zero() const;
    /// True iff every coordinate i is zero or homogeneous of degree
    /// d - degree(i), so the element lies in the degree-d piece.
    bool is_homogeneous_of_degree(long d) const;
    /// Degree of a nonzero element all of whose coordinates agree.
    std::optional<long> homogeneous_degree() const;

    GradedVector operator-() const;
    GradedVector& operator+=(const GradedVector& o);
    GradedVector& operator-=(const GradedVector& o);
    friend GradedVector operator+(GradedVector a, const GradedVector& b) { return a += b; }
    friend GradedVector operator-(GradedVector a, const GradedVector& b) { return a -= b; }
    GradedVector times(const Polynomial& p) const;

    bool operator==(const GradedVector& o) const;

    /// Coordinates in the degree-d piece basis; requires homogeneity.
    Vector piece_coords(const PieceBasis& basis) const;
    static GradedVector from_piece_coords(ModulePtr module,
                                          const PieceBasis& basis,
                                          const Vector& coords);

private:
    ModulePtr module_;
    std::vector<Polynomial> coords_;
};

/// Homogeneous map of graded free modules, stored as a target-rank x
/// source-rank matrix of polynomials. Entry (i, j) must be zero or
/// homogeneous of degree deg_src(j) - deg_tgt(i); violating entries throw.
class ModuleMap {
public:
    ModuleMap(ModulePtr source, ModulePtr target,
              std::vector<Polynomial> entries);  // row-major
    static ModuleMap zero(ModulePtr source, ModulePtr target);
    static ModuleMap identity(ModulePtr module);

    const ModulePtr& source() const { return source_; }
    const ModulePtr& target() const { return target_; }
    const Polynomial& entry(size_t i, size_t j) const {
        return entries_[i * source_->rank() + j];
    }
    void set_entry(size_t i, size_t j, Polynomial p);

    bool is_zero() const;
    GradedVector column(size_t j) const;
    GradedVector apply(const GradedVector& v) const;
    ModuleMap compose(const ModuleMap& inner) const;  // this o inner
    ModuleMap operator-() const;
    bool operator==(const ModuleMap& o) const;

    /// The induced field-linear map between degree-d pieces.
    Matrix piece_matrix(long d) const;
    Matrix piece_matrix(const PieceBasis& src, const PieceBasis& tgt) const;

    /// True iff no entry has a nonzero constant term, i.e. the image lies
    /// in m times the target (Nakayama-minimality at this map).
    bool image_in_max_ideal() const;

private:
    void check_homogeneous() const;

    ModulePtr source_, target_;
    std::vector<Polynomial> entries_;
};

/// Direct sum with label-collision detection; parts keep their labels.
ModulePtr direct_sum(const std::vector<ModulePtr>& parts);

/// Inclusion of a coordinate block [begin, begin+count) of a module built by
/// direct_sum, as a ModuleMap from the block to the whole module.
ModuleMap block_inclusion(ModulePtr whole, size_t begin, size_t count,
                          ModulePtr block);

/// Submodule spanned by a subset of the generators (by index), as a module
/// plus its inclusion map.
std::pair<ModulePtr, ModuleMap> coordinate_submodule(
    ModulePtr whole, const std::vector<size_t>& gens,
    const std::vector<std::string>& new_labels = {});

}  // namespace starres
