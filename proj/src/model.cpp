#include "vclab/model.hpp"

#include <cmath>
#include <sstream>

namespace vclab {

double ModelParams::scale() const { return std::sqrt(a); }

ModelParams make_params(double a, double b) {
    require(std::isfinite(a) && std::isfinite(b), "couplings must be finite");
    require(a > 0.0, "need a > 0 (confining potential)");
    require(b >= 0.0, "need b >= 0");
    require(b < a, "need b < a; at b >= a the lower sheet stops confining");
    return ModelParams{a, b};
}

double rescale_eigenvalue(double unit_value, const ModelParams& p) {
    return p.scale() * unit_value;
}

std::array<mpq_class, 4> MatrixFormSolution::residuals() const {
    // The four compatibility polynomials, evaluated exactly.
    std::array<mpq_class, 4> r;
    r[0] = b11 * b11 + b12 * b12 - 1;
    r[1] = 2 * b11 + c11 * c11 + c12 * c12 - 2;
    r[2] = 2 * (b11 * c11 + b12 * c12);
    r[3] = 2 * c11;
    return r;
}

std::string MatrixFormSolution::str() const {
    std::ostringstream os;
    os << "(b11=" << b11 << ", b12=" << b12 << ", c11=" << c11
       << ", c12=" << c12 << ")";
    return os.str();
}

std::vector<MatrixFormSolution> matrixform_solutions() {
    // Case analysis.  Eq4 forces c11 = 0.  Eq3 then reads 2 b12 c12 = 0.
    //
    // Case c12 = 0: eq2 gives b11 = 1, eq1 gives b12^2 = 0, so (1,0,0,0).
    // Case b12 = 0, c12 != 0: eq1 gives b11 = +-1; eq2 gives
    //   c12^2 = 2 - 2 b11, so b11 = 1 collapses into the previous case and
    //   b11 = -1 gives c12^2 = 4, i.e. c12 = +-2.
    //
    // Hence exactly three distinct solutions.
    std::vector<MatrixFormSolution> out;
    out.push_back({mpq_class(-1), 0, 0, mpq_class(2)});
    out.push_back({mpq_class(-1), 0, 0, mpq_class(-2)});
    out.push_back({mpq_class(1), 0, 0, mpq_class(0)});
    return out;
}

} // namespace vclab
