#include "tdual/complex.hpp"
#include "tdual/error.hpp"

namespace tdual {

namespace {

SimplicialComplex boundary_of_simplex(int n)
{
    std::vector<Simplex> faces;
    for (int omit = n; omit >= 0; --omit) {
        Simplex s;
        for (int v = 0; v <= n; ++v)
            if (v != omit)
                s.push_back(v);
        faces.push_back(s);
    }
    return SimplicialComplex(n + 1, faces);
}

// Moebius-Csaszar 7-vertex torus.
const std::vector<Simplex> kTorus = {
    {0, 1, 3}, {0, 1, 5}, {0, 2, 3}, {0, 2, 6}, {0, 4, 5}, {0, 4, 6}, {1, 2, 4},
    {1, 2, 6}, {1, 3, 4}, {1, 5, 6}, {2, 3, 5}, {2, 4, 5}, {3, 4, 6}, {3, 5, 6},
};

// Hemi-icosahedron: antipodal quotient of the icosahedron.
const std::vector<Simplex> kRP2 = {
    {0, 1, 2}, {0, 1, 5}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5},
    {1, 2, 4}, {1, 3, 4}, {1, 3, 5}, {2, 3, 5}, {2, 4, 5},
};

// 3x3 grid with one pair of sides glued with a flip.
const std::vector<Simplex> kKlein = {
    {0, 1, 4}, {0, 1, 8}, {0, 2, 3}, {0, 2, 6}, {0, 3, 4}, {0, 6, 8},
    {1, 2, 5}, {1, 2, 7}, {1, 4, 5}, {1, 7, 8}, {2, 3, 5}, {2, 6, 7},
    {3, 4, 7}, {3, 5, 6}, {3, 6, 7}, {4, 5, 8}, {4, 7, 8}, {5, 6, 8},
};

// 11 vertices, f-vector (11, 52, 82, 41).
const std::vector<Simplex> kRP3 = {
    {0, 1, 3, 7},  {0, 1, 3, 10}, {0, 1, 5, 7},  {0, 1, 5, 9},  {0, 1, 9, 10}, {0, 2, 4, 6},  {0, 2, 4, 7},
    {0, 2, 5, 6},  {0, 2, 5, 7},  {0, 3, 4, 7},  {0, 3, 4, 10}, {0, 4, 6, 8},  {0, 4, 8, 10}, {0, 5, 6, 9},
    {0, 6, 8, 9},  {0, 8, 9, 10}, {1, 2, 4, 6},  {1, 2, 4, 9},  {1, 2, 6, 10}, {1, 2, 9, 10}, {1, 3, 6, 8},
    {1, 3, 6, 10}, {1, 3, 7, 8},  {1, 4, 5, 8},  {1, 4, 5, 9},  {1, 4, 6, 8},  {1, 5, 7, 8},  {2, 3, 4, 7},
    {2, 3, 4, 9},  {2, 3, 7, 8},  {2, 3, 8, 9},  {2, 5, 6, 10}, {2, 5, 7, 8},  {2, 5, 8, 10}, {2, 8, 9, 10},
    {3, 4, 5, 9},  {3, 4, 5, 10}, {3, 5, 6, 9},  {3, 5, 6, 10}, {3, 6, 8, 9},  {4, 5, 8, 10},
};

} // namespace

const std::vector<std::string>& corpus_names()
{
    static const std::vector<std::string> names = {"circle", "sphere2", "torus", "rp2", "klein", "rp3", "sphere3"};
    return names;
}

SimplicialComplex corpus(std::string_view name)
{
    if (name == "circle")
        return boundary_of_simplex(2);
    if (name == "sphere2")
        return boundary_of_simplex(3);
    if (name == "sphere3")
        return boundary_of_simplex(4);
    if (name == "torus")
        return SimplicialComplex(7, kTorus);
    if (name == "rp2")
        return SimplicialComplex(6, kRP2);
    if (name == "klein")
        return SimplicialComplex(9, kKlein);
    if (name == "rp3")
        return SimplicialComplex(11, kRP3);
    throw Error(ErrorKind::UnknownName, "no corpus entry named '" + std::string(name) + "'");
}

} // namespace tdual
