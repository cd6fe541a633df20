#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

#include "stablab/errors.hpp"

namespace stablab {

using VertexId = int;

// A nonempty simplex, stored as a strictly increasing vertex list.  The empty
// ((-1)-dimensional) simplex is deliberately unrepresentable; augmentation is
// handled by the homology layer instead.
class Simplex {
  public:
    Simplex(std::initializer_list<VertexId> vs) : Simplex(std::vector<VertexId>(vs)) {}

    explicit Simplex(std::vector<VertexId> vs) : v_(std::move(vs)) {
        if (v_.empty()) throw malformed_input("simplex: vertex list must be nonempty");
        std::sort(v_.begin(), v_.end());
        if (std::adjacent_find(v_.begin(), v_.end()) != v_.end())
            throw malformed_input("simplex: repeated vertex");
    }

    int dim() const { return static_cast<int>(v_.size()) - 1; }
    std::size_t size() const { return v_.size(); }
    VertexId operator[](std::size_t i) const { return v_[i]; }
    const std::vector<VertexId>& vertices() const { return v_; }

    bool contains(VertexId v) const { return std::binary_search(v_.begin(), v_.end(), v); }

    bool is_face_of(const Simplex& other) const {
        return std::includes(other.v_.begin(), other.v_.end(), v_.begin(), v_.end());
    }

    bool disjoint_from(const Simplex& other) const {
        std::size_t i = 0, j = 0;
        while (i < v_.size() && j < other.v_.size()) {
            if (v_[i] == other.v_[j]) return false;
            (v_[i] < other.v_[j]) ? ++i : ++j;
        }
        return true;
    }

    // dim()-dimensional faces, i-th one omits vertex i.
    Simplex facet(std::size_t omit) const {
        if (v_.size() < 2) throw malformed_input("simplex: 0-simplex has no facets");
        std::vector<VertexId> out;
        out.reserve(v_.size() - 1);
        for (std::size_t i = 0; i < v_.size(); ++i)
            if (i != omit) out.push_back(v_[i]);
        return Simplex(std::move(out));
    }

    // All nonempty proper and improper faces.
    std::vector<Simplex> faces() const {
        std::vector<Simplex> out;
        const std::size_t n = v_.size();
        for (std::size_t mask = 1; mask < (std::size_t(1) << n); ++mask) {
            std::vector<VertexId> f;
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (std::size_t(1) << i)) f.push_back(v_[i]);
            out.emplace_back(std::move(f));
        }
        return out;
    }

    // Join of vertex-disjoint simplices.
    Simplex join(const Simplex& other) const {
        if (!disjoint_from(other)) throw malformed_input("simplex join: shared vertex");
        std::vector<VertexId> out(v_);
        out.insert(out.end(), other.v_.begin(), other.v_.end());
        return Simplex(std::move(out));
    }

    Simplex without(const Simplex& f) const {
        std::vector<VertexId> out;
        for (VertexId v : v_)
            if (!f.contains(v)) out.push_back(v);
        if (out.empty()) throw malformed_input("simplex: removing all vertices");
        return Simplex(std::move(out));
    }

    bool operator==(const Simplex& o) const { return v_ == o.v_; }
    bool operator!=(const Simplex& o) const { return v_ != o.v_; }
    // Dimension-then-lex order; used for canonical face tables.
    bool operator<(const Simplex& o) const {
        if (v_.size() != o.v_.size()) return v_.size() < o.v_.size();
        return v_ < o.v_;
    }

    std::string str() const {
        std::string s = "{";
        for (std::size_t i = 0; i < v_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(v_[i]);
        }
        return s + "}";
    }

  private:
    std::vector<VertexId> v_;
};

struct SimplexHash {
    std::size_t operator()(const Simplex& s) const {
        std::size_t h = 1469598103934665603ull;
        for (VertexId v : s.vertices()) {
            h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }
};

}  // namespace stablab
