#include "ccf/geometry.hpp"

#include "ccf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ccf {

namespace {

// distance from square [j,j+1]x[k,k+1] to the disk center (C,0), all in units of h,
// compared against the radius C in exact integer arithmetic
bool square_included(int j, int k, int C) {
    long long dx = 0, dy = 0;
    if (j + 1 <= C)
        dx = C - (j + 1);
    else if (j >= C)
        dx = j - C;
    if (k >= 0)
        dy = k;
    else if (k + 1 <= 0)
        dy = -(k + 1);
    return dx * dx + dy * dy < static_cast<long long>(C) * C;
}

} // namespace

bool MeshDomain::has_square(int j, int k) const {
    if (j < 0 || j >= n || k < sq_kmin || k >= sq_kmax)
        return false;
    return sq_mask[static_cast<std::size_t>(j) * (sq_kmax - sq_kmin) + (k - sq_kmin)] != 0;
}

std::size_t MeshDomain::index_of(int ix, int iy) const {
    if (ix < 0 || ix > n || iy < pt_kmin || iy > pt_kmax)
        return static_cast<std::size_t>(-1);
    std::int32_t o = pt_ord[static_cast<std::size_t>(ix) * (pt_kmax - pt_kmin + 1) + (iy - pt_kmin)];
    return o < 0 ? static_cast<std::size_t>(-1) : static_cast<std::size_t>(o);
}

MeshDomain build_mesh_domain(int n, Region region) {
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("mesh subdivision count must be even and at least 2");

    MeshDomain m;
    m.n = n;
    m.h = 1.0 / n;
    m.region = region;
    const int C = n / 2;
    m.sq_kmin = (region == Region::HalfDisk) ? 0 : -C;
    m.sq_kmax = C;
    m.pt_kmin = m.sq_kmin;
    m.pt_kmax = m.sq_kmax;

    m.sq_mask.assign(static_cast<std::size_t>(n) * (m.sq_kmax - m.sq_kmin), 0);
    for (int j = 0; j < n; ++j)
        for (int k = m.sq_kmin; k < m.sq_kmax; ++k)
            if (square_included(j, k, C)) {
                m.sq_mask[static_cast<std::size_t>(j) * (m.sq_kmax - m.sq_kmin) + (k - m.sq_kmin)] = 1;
                m.squares.emplace_back(j, k);
            }

    const int ky = m.pt_kmax - m.pt_kmin + 1;
    m.pt_ord.assign(static_cast<std::size_t>(n + 1) * ky, -1);
    std::int32_t next = 0;
    for (int ix = 0; ix <= n; ++ix)
        for (int iy = m.pt_kmin; iy <= m.pt_kmax; ++iy) {
            bool present = m.has_square(ix - 1, iy - 1) || m.has_square(ix - 1, iy) ||
                           m.has_square(ix, iy - 1) || m.has_square(ix, iy);
            if (present) {
                m.pt_ord[static_cast<std::size_t>(ix) * ky + (iy - m.pt_kmin)] = next++;
                m.points.push_back({ix, iy});
            }
        }

    std::size_t org = m.index_of(0, 0);
    if (org == static_cast<std::size_t>(-1))
        throw std::logic_error("mesh has no origin point");
    m.origin_index = org;
    return m;
}

std::pair<int, int> locate_square(const MeshDomain& mesh, double x, double y) {
    const double gx = x / mesh.h;
    const double gy = y / mesh.h;
    const double fjx = std::floor(gx);
    const double fky = std::floor(gy);
    const int j0 = static_cast<int>(fjx);
    const int k0 = static_cast<int>(fky);
    const double fx = gx - fjx;
    const double fy = gy - fky;

    // covered points can sit on a grid line with the floor square absent; rounding keeps
    // them within eps of the line, so the face-sharing neighbors are valid candidates
    const double eps = 1e-9;
    int jc[3], kc[3];
    int nj = 0, nk = 0;
    jc[nj++] = j0;
    if (fx < eps)
        jc[nj++] = j0 - 1;
    if (fx > 1.0 - eps)
        jc[nj++] = j0 + 1;
    kc[nk++] = k0;
    if (fy < eps)
        kc[nk++] = k0 - 1;
    if (fy > 1.0 - eps)
        kc[nk++] = k0 + 1;

    for (int a = 0; a < nj; ++a)
        for (int b = 0; b < nk; ++b)
            if (mesh.has_square(jc[a], kc[b]))
                return {jc[a], kc[b]};

    throw OutOfDomainError("point (" + std::to_string(x) + ", " + std::to_string(y) +
                           ") is not covered by the mesh");
}

StencilWeights bilinear_weights(const MeshDomain& mesh, double x, double y) {
    auto [j, k] = locate_square(mesh, x, y);
    double tx = std::clamp(x / mesh.h - j, 0.0, 1.0);
    double ty = std::clamp(y / mesh.h - k, 0.0, 1.0);

    StencilWeights st;
    st.corner[0] = mesh.index_of(j, k);
    st.corner[1] = mesh.index_of(j, k + 1);
    st.corner[2] = mesh.index_of(j + 1, k);
    st.corner[3] = mesh.index_of(j + 1, k + 1);
    st.w[0] = (1.0 - tx) * (1.0 - ty);
    st.w[1] = (1.0 - tx) * ty;
    st.w[2] = tx * (1.0 - ty);
    st.w[3] = tx * ty;
    st.bracket = mesh.h * mesh.h * (tx * (1.0 - tx) + ty * (1.0 - ty));
    return st;
}

} // namespace ccf
