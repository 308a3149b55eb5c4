#include "k3forms/qmatrix.hpp"
#include "k3forms/errors.hpp"

namespace k3 {

QMatrix qmat_identity(size_t n) {
    QMatrix m(n, std::vector<Rational>(n, Rational(0)));
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

QMatrix qmat_mul(const QMatrix& a, const QMatrix& b) {
    size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    QMatrix r(n, std::vector<Rational>(m, Rational(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (size_t j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
        }
    return r;
}

QMatrix qmat_transpose(const QMatrix& a) {
    size_t n = a.size(), m = a.empty() ? 0 : a[0].size();
    QMatrix r(m, std::vector<Rational>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < m; ++j) r[j][i] = a[i][j];
    return r;
}

Rational qmat_det(QMatrix a) {
    size_t n = a.size();
    Rational det(1);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) return Rational(0);
        if (piv != col) {
            std::swap(a[piv], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (size_t r = col + 1; r < n; ++r) {
            if (a[r][col] == 0) continue;
            Rational f = a[r][col] / a[col][col];
            for (size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
        }
    }
    return det;
}

bool qmat_is_square(const QMatrix& a) {
    for (const auto& row : a)
        if (row.size() != a.size()) return false;
    return true;
}

bool qmat_is_symmetric(const QMatrix& a) {
    if (!qmat_is_square(a)) return false;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = i + 1; j < a.size(); ++j)
            if (a[i][j] != a[j][i]) return false;
    return true;
}

} // namespace k3
