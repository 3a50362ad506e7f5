#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace specnorm {

using cplx = std::complex<double>;

enum class ErrorCode {
    WrongLength,
    NonFinite,
    DegreeTooSmall,
    ZeroState,
    NotUnitary,
    ZeroPolynomial,
    DidNotConverge,
    ExceptionalFamily,
    InternalInconsistency,
    QVanishes,
    SdVanishes,
    ClassificationFailure,
    WrongKind,
    NotReal,
    BracketNotReached,
    NotAState,
    BadIndex,
    UnknownTarget,
    InputError,
};

const char* error_name(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

enum class Field { complex, real };

const char* field_name(Field f);

// Symmetric d-qubit tensor in the s_k parametrization: s_k is the entry with
// exactly k indices equal to the second basis vector.
struct QubitState {
    int d = 0;
    std::vector<cplx> s;
    bool is_real = false;
};

struct UnitVector2 {
    cplx x0{1.0, 0.0};
    cplx x1{0.0, 0.0};
};

using Mat2 = std::array<std::array<cplx, 2>, 2>;

QubitState make_state(int d, const std::vector<cplx>& coeffs);
QubitState make_real_state(int d, const std::vector<double>& coeffs);

double hs_norm(const QubitState& st);
QubitState normalize(const QubitState& st);

// Coefficients of f(Ux) re-expanded in the monomial basis.
QubitState apply_unitary(const QubitState& st, const Mat2& U);

QubitState conjugate(const QubitState& st);
QubitState scale(const QubitState& st, cplx c);

// f(x) = sum_j C(d,j) s_j x0^(d-j) x1^j
cplx eval_form(const QubitState& st, cplx x0, cplx x1);

double binom(int n, int k);
double log_binom(int n, int k);

Mat2 mat_mul(const Mat2& a, const Mat2& b);
bool is_unitary(const Mat2& U, double tol = 1e-10);

} // namespace specnorm
