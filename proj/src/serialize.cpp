#include "brown/serialize.hpp"

#include <cmath>
#include <sstream>

namespace brown {

namespace {

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  detail::require(j.is_array() && j.size() == 2, ErrorCode::io, "expected [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json point_to_json(const Point& p) {
  Json out = Json::array();
  for (Complex z : p) out.push_back(complex_to_json(z));
  return out;
}

Point point_from_json(const Json& j) {
  Point p;
  for (const auto& e : j) p.push_back(complex_from_json(e));
  return p;
}

double finite(double x, const char* what) {
  detail::require(std::isfinite(x), ErrorCode::io, std::string(what) + ": non-finite value");
  return x;
}

}  // namespace

Json matrix_to_json(const ComplexMatrix& m) {
  Json re = Json::array(), im = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json rr = Json::array(), ri = Json::array();
    for (int j = 0; j < m.cols(); ++j) {
      rr.push_back(m(i, j).real());
      ri.push_back(m(i, j).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  Json out{{"d", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
  if (m.rows() != m.cols()) out["cols"] = m.cols();
  return out;
}

ComplexMatrix matrix_from_json(const Json& j) {
  detail::require(j.contains("d") && j.contains("re") && j.contains("im"), ErrorCode::io,
                  "matrix json: missing d/re/im");
  const int rows = j["d"].get<int>();
  const int cols = j.contains("cols") ? j["cols"].get<int>() : rows;
  detail::require(rows >= 0 && cols >= 0, ErrorCode::io, "matrix json: negative dimensions");
  const auto& re = j["re"];
  const auto& im = j["im"];
  detail::require(static_cast<int>(re.size()) == rows && static_cast<int>(im.size()) == rows,
                  ErrorCode::io, "matrix json: row count mismatch");
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    detail::require(static_cast<int>(re[i].size()) == cols &&
                        static_cast<int>(im[i].size()) == cols,
                    ErrorCode::io, "matrix json: column count mismatch");
    for (int c = 0; c < cols; ++c)
      m(i, c) = Complex(finite(re[i][c].get<double>(), "matrix json"),
                        finite(im[i][c].get<double>(), "matrix json"));
  }
  return m;
}

Json measure_to_json(const AtomicMeasure& mu) {
  Json atoms = Json::array();
  for (const auto& a : mu.atoms()) atoms.push_back(Json{{"z", point_to_json(a.z)}, {"w", a.weight}});
  return Json{{"dim", mu.dim()}, {"atoms", std::move(atoms)}};
}

AtomicMeasure measure_from_json(const Json& j, const Tolerances& tol) {
  detail::require(j.contains("dim") && j.contains("atoms"), ErrorCode::io,
                  "measure json: missing dim/atoms");
  std::vector<Atom> atoms;
  for (const auto& a : j["atoms"])
    atoms.push_back(Atom{point_from_json(a.at("z")), finite(a.at("w").get<double>(), "measure")});
  return AtomicMeasure(j["dim"].get<int>(), std::move(atoms), tol);
}

Json idempotent_to_json(const Idempotent& e) {
  return Json{{"d", e.ambient()},
              {"range", matrix_to_json(e.range().frame())},
              {"kernel", matrix_to_json(e.kernel().frame())}};
}

Idempotent idempotent_from_json(const Json& j, const Tolerances& tol) {
  Subspace range = Subspace::from_frame(matrix_from_json(j.at("range")), tol);
  Subspace kernel = Subspace::from_frame(matrix_from_json(j.at("kernel")), tol);
  return Idempotent::from_pair(std::move(range), std::move(kernel), tol);
}

Json decomposition_to_json(const JointDecomposition& dec) {
  Json clusters = Json::array();
  for (const auto& c : dec.clusters())
    clusters.push_back(Json{{"point", point_to_json(c.point)},
                            {"multiplicity", c.multiplicity},
                            {"frame", matrix_to_json(c.space.frame())}});
  return Json{{"d", dec.dim()},
              {"n", dec.n()},
              {"frame_condition", dec.frame_condition()},
              {"invariance_residual", dec.invariance_residual()},
              {"clusters", std::move(clusters)}};
}

Json map_to_json(const MapDescriptor& m) {
  return std::visit(
      [](const auto& node) -> Json {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Polynomial>) {
          Json terms = Json::array();
          for (const auto& [exps, coeff] : node.terms)
            terms.push_back(Json{{"exps", exps}, {"coeff", complex_to_json(coeff)}});
          return Json{{"type", "polynomial"}, {"nvars", node.nvars}, {"terms", std::move(terms)}};
        } else if constexpr (std::is_same_v<T, MapDescriptor::AddLast>) {
          return Json{{"type", "add_last"}, {"n", node.n}};
        } else if constexpr (std::is_same_v<T, MapDescriptor::MulLast>) {
          return Json{{"type", "mul_last"}, {"n", node.n}, {"alpha", complex_to_json(node.alpha)}};
        } else if constexpr (std::is_same_v<T, MapDescriptor::ScalePair>) {
          return Json{{"type", "scale_pair"},
                      {"alpha", complex_to_json(node.alpha)},
                      {"beta", complex_to_json(node.beta)}};
        } else if constexpr (std::is_same_v<T, MapDescriptor::Permutation>) {
          return Json{{"type", "permutation"}, {"sigma", node.sigma}};
        } else {
          return Json{{"type", "duplicate"}, {"n", node.n}, {"index", node.index}};
        }
      },
      m.node());
}

MapDescriptor map_from_json(const Json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "polynomial") {
    Polynomial p;
    p.nvars = j.at("nvars").get<int>();
    for (const auto& t : j.at("terms"))
      p.terms[t.at("exps").get<std::vector<int>>()] = complex_from_json(t.at("coeff"));
    return MapDescriptor::polynomial(std::move(p));
  }
  if (type == "add_last") return MapDescriptor::add_last(j.at("n").get<int>());
  if (type == "mul_last")
    return MapDescriptor::mul_last(j.at("n").get<int>(), complex_from_json(j.at("alpha")));
  if (type == "scale_pair")
    return MapDescriptor::scale_pair(complex_from_json(j.at("alpha")),
                                     complex_from_json(j.at("beta")));
  if (type == "permutation")
    return MapDescriptor::permutation(j.at("sigma").get<std::vector<int>>());
  if (type == "duplicate")
    return MapDescriptor::duplicate(j.at("n").get<int>(), j.at("index").get<int>());
  throw Error(ErrorCode::io, "map json: unknown type " + type);
}

Json region_to_json(const Region& r) {
  return std::visit(
      [](const auto& node) -> Json {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Region::HalfOpenBox>) {
          return Json{{"type", "box"}, {"center", complex_to_json(node.center)},
                      {"delta", node.delta}};
        } else if constexpr (std::is_same_v<T, Region::OpenBall>) {
          return Json{{"type", "open_ball"}, {"center", point_to_json(node.center)},
                      {"radius", node.radius}};
        } else if constexpr (std::is_same_v<T, Region::ClosedBall>) {
          return Json{{"type", "closed_ball"}, {"center", point_to_json(node.center)},
                      {"radius", node.radius}};
        } else if constexpr (std::is_same_v<T, Region::Full>) {
          return Json{{"type", "full"}, {"dim", node.dim}};
        } else if constexpr (std::is_same_v<T, Region::Empty>) {
          return Json{{"type", "empty"}, {"dim", node.dim}};
        } else if constexpr (std::is_same_v<T, std::shared_ptr<const Region::Union>>) {
          return Json{{"type", "union"}, {"a", region_to_json(node->a)},
                      {"b", region_to_json(node->b)}};
        } else if constexpr (std::is_same_v<T, std::shared_ptr<const Region::Intersection>>) {
          return Json{{"type", "intersection"}, {"a", region_to_json(node->a)},
                      {"b", region_to_json(node->b)}};
        } else if constexpr (std::is_same_v<T, std::shared_ptr<const Region::Complement>>) {
          return Json{{"type", "complement"}, {"a", region_to_json(node->a)}};
        } else if constexpr (std::is_same_v<T, std::shared_ptr<const Region::Product>>) {
          return Json{{"type", "product"}, {"a", region_to_json(node->a)},
                      {"b", region_to_json(node->b)}};
        } else {
          return Json{{"type", "preimage"}, {"map", map_to_json(node->map)},
                      {"target", region_to_json(node->target)}};
        }
      },
      r.node());
}

Region region_from_json(const Json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "box")
    return Region::box(complex_from_json(j.at("center")), j.at("delta").get<double>());
  if (type == "open_ball")
    return Region::open_ball(point_from_json(j.at("center")), j.at("radius").get<double>());
  if (type == "closed_ball")
    return Region::closed_ball(point_from_json(j.at("center")), j.at("radius").get<double>());
  if (type == "full") return Region::full(j.at("dim").get<int>());
  if (type == "empty") return Region::empty(j.at("dim").get<int>());
  if (type == "union") return region_from_json(j.at("a")) | region_from_json(j.at("b"));
  if (type == "intersection") return region_from_json(j.at("a")) & region_from_json(j.at("b"));
  if (type == "complement") return ~region_from_json(j.at("a"));
  if (type == "product")
    return Region::product(region_from_json(j.at("a")), region_from_json(j.at("b")));
  if (type == "preimage")
    return Region::preimage(map_from_json(j.at("map")), region_from_json(j.at("target")));
  throw Error(ErrorCode::io, "region json: unknown type " + type);
}

Json report_to_json(const Report& r) {
  Json items = Json::array();
  for (const auto& c : r.items)
    items.push_back(Json{{"assertion", c.name},
                         {"observed", c.observed},
                         {"tolerance", c.tolerance},
                         {"pass", c.pass}});
  return Json{{"suite", r.title}, {"pass", r.pass()}, {"checks", std::move(items)}};
}

namespace {
void append_num(std::string& out, double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  out += os.str();
}
}  // namespace

std::string measure_to_csv(const AtomicMeasure& mu) {
  std::string out;
  for (int i = 1; i <= mu.dim(); ++i)
    out += "re" + std::to_string(i) + ",im" + std::to_string(i) + ",";
  out += "weight\n";
  for (const auto& a : mu.atoms()) {
    for (Complex z : a.z) {
      append_num(out, z.real());
      out += ",";
      append_num(out, z.imag());
      out += ",";
    }
    append_num(out, a.weight);
    out += "\n";
  }
  return out;
}

std::string grid_to_csv(const GridDensity& g) {
  std::string out = "x,y,mass\n";
  for (int i = 0; i < g.spec().nx; ++i) {
    for (int j = 0; j < g.spec().ny; ++j) {
      append_num(out, g.cell_x(i));
      out += ",";
      append_num(out, g.cell_y(j));
      out += ",";
      append_num(out, g.cell_mass()(i, j));
      out += "\n";
    }
  }
  return out;
}

std::string cover_to_csv(const BoxCover& c) {
  std::string out = "z_re,z_im,w_re,w_im,delta,level\n";
  for (const auto& b : c.boxes) {
    append_num(out, b.z.real());
    out += ",";
    append_num(out, b.z.imag());
    out += ",";
    append_num(out, b.w.real());
    out += ",";
    append_num(out, b.w.imag());
    out += ",";
    append_num(out, b.delta);
    out += "," + std::to_string(b.level) + "\n";
  }
  return out;
}

std::string grid_to_ppm(const GridDensity& g) {
  // five linear stops from deep blue to yellow
  static const int stops[5][3] = {
      {13, 8, 135}, {126, 3, 168}, {204, 71, 120}, {248, 149, 64}, {240, 249, 33}};
  const auto& mass = g.cell_mass();
  const double peak = std::max(mass.maxCoeff(), 1e-300);

  const int nx = g.spec().nx, ny = g.spec().ny;
  std::string out = "P6\n" + std::to_string(nx) + " " + std::to_string(ny) + "\n255\n";
  out.reserve(out.size() + static_cast<std::size_t>(nx) * ny * 3);
  for (int j = ny - 1; j >= 0; --j) {  // top row first
    for (int i = 0; i < nx; ++i) {
      const double v = std::clamp(mass(i, j) / peak, 0.0, 1.0);
      const double pos = v * 4.0;
      const int k = std::min(static_cast<int>(pos), 3);
      const double f = pos - k;
      for (int c = 0; c < 3; ++c) {
        const double channel = stops[k][c] + f * (stops[k + 1][c] - stops[k][c]);
        out.push_back(static_cast<char>(static_cast<unsigned char>(std::lround(channel))));
      }
    }
  }
  return out;
}

}  // namespace brown
