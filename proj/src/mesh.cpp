#include "chdg/mesh.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace chdg {

Mesh::Mesh(std::vector<Point> vertices, std::vector<std::array<int, 3>> elements)
    : vertices_(std::move(vertices)), elements_(std::move(elements))
{
    const int nv = static_cast<int>(vertices_.size());
    for (std::size_t e = 0; e < elements_.size(); ++e) {
        for (int v : elements_[e]) {
            if (v < 0 || v >= nv)
                throw std::invalid_argument("Mesh: element " + std::to_string(e) +
                                            " references vertex " + std::to_string(v));
        }
        if (signed_area(e) <= 0.0)
            throw std::invalid_argument("Mesh: element " + std::to_string(e) +
                                        " is not counterclockwise");
    }

    // Sorted map gives the lexicographic face order.
    std::map<std::pair<int, int>, int> face_index;
    for (const auto& tri : elements_) {
        for (int i = 0; i < 3; ++i) {
            const int a = tri[(i + 1) % 3];
            const int b = tri[(i + 2) % 3];
            face_index.emplace(std::minmax(a, b), 0);
        }
    }
    faces_.reserve(face_index.size());
    int next = 0;
    for (auto& [key, idx] : face_index) {
        idx = next++;
        faces_.push_back({key.first, key.second});
    }

    face_elems_.assign(faces_.size(), {-1, -1});
    elem_faces_.resize(elements_.size());
    elem_face_signs_.resize(elements_.size());
    diameters_.resize(elements_.size());
    for (std::size_t e = 0; e < elements_.size(); ++e) {
        const auto& tri = elements_[e];
        double hmax = 0.0;
        for (int i = 0; i < 3; ++i) {
            const int a = tri[(i + 1) % 3];
            const int b = tri[(i + 2) % 3];
            const int f = face_index.at(std::minmax(a, b));
            elem_faces_[e][i] = f;
            elem_face_signs_[e][i] = a < b ? 1 : -1;
            auto& inc = face_elems_[f];
            if (inc[0] < 0)
                inc[0] = static_cast<int>(e);
            else if (inc[1] < 0)
                inc[1] = static_cast<int>(e);
            else
                throw std::invalid_argument("Mesh: face shared by more than two elements");
            hmax = std::max(hmax, (vertices_[a] - vertices_[b]).norm());
        }
        diameters_[e] = hmax;
    }

    face_lengths_.resize(faces_.size());
    for (std::size_t f = 0; f < faces_.size(); ++f)
        face_lengths_[f] = (vertices_[faces_[f][1]] - vertices_[faces_[f][0]]).norm();
}

double Mesh::signed_area(std::size_t e) const
{
    const auto& t = elements_.at(e);
    const Point d1 = vertices_[t[1]] - vertices_[t[0]];
    const Point d2 = vertices_[t[2]] - vertices_[t[0]];
    return 0.5 * (d1.x() * d2.y() - d1.y() * d2.x());
}

Point Mesh::face_point(std::size_t f, double s) const
{
    const auto& fv = faces_.at(f);
    return vertices_[fv[0]] + s * (vertices_[fv[1]] - vertices_[fv[0]]);
}

Mesh build_uniform_mesh(int n, const Rectangle& domain)
{
    if (n < 1)
        throw std::invalid_argument("build_uniform_mesh: n must be >= 1, got " + std::to_string(n));
    if (!(domain.x1 > domain.x0 && domain.y1 > domain.y0))
        throw std::invalid_argument("build_uniform_mesh: degenerate rectangle");

    std::vector<Point> vertices;
    vertices.reserve(static_cast<std::size_t>((n + 1) * (n + 1)));
    const double dx = (domain.x1 - domain.x0) / n;
    const double dy = (domain.y1 - domain.y0) / n;
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i)
            vertices.emplace_back(domain.x0 + i * dx, domain.y0 + j * dy);

    auto vid = [n](int i, int j) { return j * (n + 1) + i; };
    std::vector<std::array<int, 3>> elements;
    elements.reserve(static_cast<std::size_t>(2 * n * n));
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const int sw = vid(i, j), se = vid(i + 1, j);
            const int nw = vid(i, j + 1), ne = vid(i + 1, j + 1);
            elements.push_back({sw, se, ne});
            elements.push_back({sw, ne, nw});
        }
    }
    return Mesh(std::move(vertices), std::move(elements));
}

ElementGeometry element_geometry(const Mesh& mesh, std::size_t e)
{
    if (e >= mesh.num_elements())
        throw std::out_of_range("element_geometry: element index " + std::to_string(e) +
                                " out of range");
    const auto& t = mesh.element(e);
    const auto& v = mesh.vertices();
    ElementGeometry g;
    g.origin = v[t[0]];
    g.jacobian.col(0) = v[t[1]] - v[t[0]];
    g.jacobian.col(1) = v[t[2]] - v[t[0]];
    g.det = g.jacobian.determinant();
    g.inverse_jacobian = g.jacobian.inverse();
    g.area = 0.5 * g.det;
    g.diameter = mesh.diameter(e);
    for (int i = 0; i < 3; ++i) {
        const Point tangent = v[t[(i + 2) % 3]] - v[t[(i + 1) % 3]];
        const double len = tangent.norm();
        g.face_lengths[i] = len;
        g.normals[i] = Point(tangent.y(), -tangent.x()) / len;
    }
    return g;
}

} // namespace chdg
