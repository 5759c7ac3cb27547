#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace ccf {

enum class Region { HalfDisk, FullDisk };

// grid point as integer multiples of h, so ordering and lookups stay exact
struct GridPoint {
    int ix = 0;
    int iy = 0;
    friend bool operator==(GridPoint a, GridPoint b) { return a.ix == b.ix && a.iy == b.iy; }
};

// union of closed h-squares meeting the interior of the disk |z - 1/2| < 1/2
// (intersected with the upper half plane for HalfDisk), h = 1/n with n even
struct MeshDomain {
    int n = 0;
    double h = 0.0;
    Region region = Region::HalfDisk;

    int sq_kmin = 0, sq_kmax = 0; // square index k ranges over [sq_kmin, sq_kmax)
    int pt_kmin = 0, pt_kmax = 0; // point index iy ranges over [pt_kmin, pt_kmax]

    std::vector<std::pair<int, int>> squares; // dictionary order (j, then k)
    std::vector<GridPoint> points;            // dictionary order (ix, then iy)
    std::size_t origin_index = 0;             // position of (0,0) in points

    bool has_square(int j, int k) const;
    // SIZE_MAX when (ix,iy) is not a grid point of the union
    std::size_t index_of(int ix, int iy) const;

    double px(std::size_t i) const { return points[i].ix * h; }
    double py(std::size_t i) const { return points[i].iy * h; }
    std::size_t size() const { return points.size(); }

    std::vector<std::uint8_t> sq_mask;
    std::vector<std::int32_t> pt_ord;
};

MeshDomain build_mesh_domain(int n, Region region);

// square containing (x, y); when the floor square is absent the neighbors across the
// shared face are tried, which resolves points sitting on grid lines up to rounding
std::pair<int, int> locate_square(const MeshDomain& mesh, double x, double y);

// bilinear hat weights of (x, y) on the corners of its square, corner order
// (j,k), (j,k+1), (j+1,k), (j+1,k+1); bracket is the Taylor remainder factor
// (x_{j+1}-x)(x-x_j) + (y_{k+1}-y)(y-y_k), in [0, h^2/2]
struct StencilWeights {
    std::array<std::size_t, 4> corner{};
    std::array<double, 4> w{};
    double bracket = 0.0;
};

StencilWeights bilinear_weights(const MeshDomain& mesh, double x, double y);

} // namespace ccf
