#include "ncfem/quadrature.hpp"

#include <cmath>
#include <map>
#include <string>

namespace ncfem {
namespace {

void orbit1(QuadratureRule& r, double w) { r.nodes.push_back({{1. / 3, 1. / 3, 1. / 3}, w}); }

// three permutations of (a, b, b), b = (1-a)/2
void orbit3(QuadratureRule& r, double a, double w) {
  const double b = (1.0 - a) / 2.0;
  r.nodes.push_back({{a, b, b}, w});
  r.nodes.push_back({{b, a, b}, w});
  r.nodes.push_back({{b, b, a}, w});
}

// six permutations of (a, b, 1-a-b)
void orbit6(QuadratureRule& r, double a, double b, double w) {
  const double c = 1.0 - a - b;
  r.nodes.push_back({{a, b, c}, w});
  r.nodes.push_back({{a, c, b}, w});
  r.nodes.push_back({{b, a, c}, w});
  r.nodes.push_back({{b, c, a}, w});
  r.nodes.push_back({{c, a, b}, w});
  r.nodes.push_back({{c, b, a}, w});
}

// Weights below follow the usual normalization (sum 1) and are halved at the end
// to make them sum to the reference area 1/2.
QuadratureRule make_rule(int degree) {
  QuadratureRule r;
  r.degree = degree;
  switch (degree) {
    case 1:
      orbit1(r, 1.0);
      break;
    case 2:
      orbit3(r, 0.0, 1.0 / 3.0);  // edge midpoints
      break;
    case 3:
      orbit1(r, -27.0 / 48.0);
      orbit3(r, 0.6, 25.0 / 48.0);
      break;
    case 4:
      orbit3(r, 0.108103018168070, 0.223381589678011);
      orbit3(r, 0.816847572980459, 0.109951743655322);
      break;
    case 6:
      orbit3(r, 0.501426509658179, 0.116786275726379);
      orbit3(r, 0.873821971016996, 0.050844906370207);
      orbit6(r, 0.053145049844817, 0.310352451033784, 0.082851075618374);
      break;
    case 8:
      orbit1(r, 0.14431560767768395);
      orbit3(r, 0.081414823414695664, 0.095091634267354258);
      orbit3(r, 0.65886138449663911, 0.10321737053472019);
      orbit3(r, 0.89890554336593831, 0.03245849762320472);
      orbit6(r, 0.008394777409867854, 0.26311282963486188, 0.027230314174413069);
      break;
    default:
      throw std::invalid_argument("triangle_quadrature: unsupported degree " +
                                  std::to_string(degree));
  }
  for (auto& n : r.nodes) n.weight *= 0.5;
  return r;
}

EdgeQuadratureRule make_edge_rule(int npoints) {
  EdgeQuadratureRule r;
  if (npoints == 2) {
    r.degree = 3;
    const double d = 0.5 / std::sqrt(3.0);
    r.nodes = {{0.5 - d, 0.5}, {0.5 + d, 0.5}};
  } else if (npoints == 4) {
    r.degree = 7;
    r.nodes = {{0.069431844202973712, 0.17392742256872692},
               {0.33000947820757187, 0.32607257743127305},
               {0.66999052179242813, 0.32607257743127305},
               {0.93056815579702623, 0.17392742256872692}};
  } else {
    throw std::invalid_argument("edge_quadrature: unsupported point count " +
                                std::to_string(npoints));
  }
  return r;
}

}  // namespace

const QuadratureRule& triangle_quadrature(int degree) {
  static const std::map<int, QuadratureRule> rules = [] {
    std::map<int, QuadratureRule> m;
    for (int d : {1, 2, 3, 4, 6, 8}) m.emplace(d, make_rule(d));
    return m;
  }();
  auto it = rules.find(degree);
  if (it == rules.end())
    throw std::invalid_argument("triangle_quadrature: unsupported degree " +
                                std::to_string(degree));
  return it->second;
}

const EdgeQuadratureRule& edge_quadrature(int npoints) {
  static const EdgeQuadratureRule g2 = make_edge_rule(2);
  static const EdgeQuadratureRule g4 = make_edge_rule(4);
  if (npoints == 2) return g2;
  if (npoints == 4) return g4;
  throw std::invalid_argument("edge_quadrature: unsupported point count " +
                              std::to_string(npoints));
}

}  // namespace ncfem
