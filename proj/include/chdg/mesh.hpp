#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstddef>
#include <vector>

namespace chdg {

using Point = Eigen::Vector2d;

struct Rectangle {
    double x0 = 0.0;
    double y0 = 0.0;
    double x1 = 1.0;
    double y1 = 1.0;

    double area() const { return (x1 - x0) * (y1 - y0); }
};

/// Affine data of one triangle. The map sends the reference triangle
/// {x, y >= 0, x + y <= 1} onto the element: x = origin + jacobian * xi.
struct ElementGeometry {
    Point origin;
    Eigen::Matrix2d jacobian;
    Eigen::Matrix2d inverse_jacobian;
    double det = 0.0;   // 2 * area
    double area = 0.0;
    double diameter = 0.0;
    std::array<Point, 3> normals;       // outward unit normal of local face i
    std::array<double, 3> face_lengths;

    Point map(const Point& xi) const { return origin + jacobian * xi; }
    Point pullback(const Point& x) const { return inverse_jacobian * (x - origin); }
};

/// Conforming triangulation with full element/face incidence.
///
/// Local face i of an element joins local vertices (i+1)%3 and (i+2)%3, i.e.
/// it is the face opposite vertex i. Global faces are stored as sorted vertex
/// pairs (a < b) in lexicographic order; the face parameter s in [0, 1] runs
/// from vertex a to vertex b, and every element uses that same orientation.
class Mesh {
public:
    Mesh(std::vector<Point> vertices, std::vector<std::array<int, 3>> elements);

    std::size_t num_vertices() const { return vertices_.size(); }
    std::size_t num_elements() const { return elements_.size(); }
    std::size_t num_faces() const { return faces_.size(); }

    const std::vector<Point>& vertices() const { return vertices_; }
    const std::array<int, 3>& element(std::size_t e) const { return elements_.at(e); }
    const std::array<int, 2>& face(std::size_t f) const { return faces_.at(f); }

    const std::array<int, 3>& element_faces(std::size_t e) const { return elem_faces_.at(e); }
    /// +1 when the counterclockwise traversal of the element runs a -> b on that face.
    const std::array<int, 3>& element_face_signs(std::size_t e) const { return elem_face_signs_.at(e); }
    /// Incident elements of a face; second entry is -1 on the boundary.
    const std::array<int, 2>& face_elements(std::size_t f) const { return face_elems_.at(f); }
    bool is_boundary_face(std::size_t f) const { return face_elems_.at(f)[1] < 0; }

    double diameter(std::size_t e) const { return diameters_.at(e); }
    double face_length(std::size_t f) const { return face_lengths_.at(f); }
    double signed_area(std::size_t e) const;

    /// Point on global face f at parameter s (0 at vertex a, 1 at vertex b).
    Point face_point(std::size_t f, double s) const;

private:
    std::vector<Point> vertices_;
    std::vector<std::array<int, 3>> elements_;
    std::vector<std::array<int, 2>> faces_;
    std::vector<std::array<int, 3>> elem_faces_;
    std::vector<std::array<int, 3>> elem_face_signs_;
    std::vector<std::array<int, 2>> face_elems_;
    std::vector<double> diameters_;
    std::vector<double> face_lengths_;
};

/// n x n squares, each split along its (+1,+1) diagonal into the triangles
/// (SW, SE, NE) and (SW, NE, NW). Gives 2n^2 elements, 3n^2+2n faces and
/// (n+1)^2 vertices.
Mesh build_uniform_mesh(int n, const Rectangle& domain = {});

ElementGeometry element_geometry(const Mesh& mesh, std::size_t e);

} // namespace chdg
