#include "fspesoa/matrix.hpp"

#include <stdexcept>

namespace fspesoa {

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    std::vector<std::vector<double>> copy;
    copy.reserve(rows.size());
    for (const auto& r : rows) copy.emplace_back(r);
    return from_rows(copy);
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) return {};
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols()) {
            throw std::invalid_argument("Matrix::from_rows: ragged rows");
        }
        for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
    }
    return m;
}

std::vector<double> Matrix::column(std::size_t c) const {
    std::vector<double> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
}

Matrix Matrix::take_rows(std::span<const std::size_t> indices) const {
    Matrix out(indices.size(), cols_);
    for (std::size_t r = 0; r < indices.size(); ++r) {
        if (indices[r] >= rows_) throw std::out_of_range("Matrix::take_rows: index out of range");
        for (std::size_t c = 0; c < cols_; ++c) out(r, c) = (*this)(indices[r], c);
    }
    return out;
}

Matrix Matrix::take_columns(std::span<const std::size_t> indices) const {
    Matrix out(rows_, indices.size());
    for (std::size_t c = 0; c < indices.size(); ++c) {
        if (indices[c] >= cols_) throw std::out_of_range("Matrix::take_columns: index out of range");
        for (std::size_t r = 0; r < rows_; ++r) out(r, c) = (*this)(r, indices[c]);
    }
    return out;
}

}  // namespace fspesoa
