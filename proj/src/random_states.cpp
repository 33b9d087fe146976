#include "balfilt/random_states.hpp"

namespace balfilt {

long RandomStates::pick(long lo, long hi) {
    // Modulo draw instead of std::uniform_int_distribution: the stream must
    // be reproducible across standard libraries.
    return lo + static_cast<long>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
}

Rational RandomStates::rational(long bound) {
    return Rational(Int(pick(-bound, bound)), Int(pick(1, bound)));
}

QMat RandomStates::gram(std::size_t dim) {
    for (;;) {
        QMat b(dim, dim);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) b.at(i, j) = Rational(pick(-2, 2));
        if (determinant(b) == 0) continue;
        QMat d(dim, dim);
        for (std::size_t i = 0; i < dim; ++i)
            d.at(i, i) = Rational(Int(pick(1, 4)), Int(pick(1, 4)));
        return mul(transpose(b), mul(d, b));
    }
}

QMat RandomStates::unimodular(std::size_t dim) {
    QMat u = QMat::identity(dim);
    const std::size_t ops = 2 * dim + 4;
    for (std::size_t k = 0; k < ops; ++k) {
        std::size_t i = static_cast<std::size_t>(pick(0, static_cast<long>(dim) - 1));
        std::size_t j = static_cast<std::size_t>(pick(0, static_cast<long>(dim) - 1));
        switch (pick(0, 2)) {
            case 0:  // add a small multiple of one row to another
                if (i != j) {
                    Rational c(pick(-2, 2));
                    for (std::size_t t = 0; t < dim; ++t)
                        u.at(i, t) = Rational(u.at(i, t) + c * u.at(j, t));
                }
                break;
            case 1:  // swap rows
                if (i != j)
                    for (std::size_t t = 0; t < dim; ++t) std::swap(u.at(i, t), u.at(j, t));
                break;
            default:  // negate a row
                for (std::size_t t = 0; t < dim; ++t) u.at(i, t) = Rational(-u.at(i, t));
                break;
        }
    }
    return u;
}

PolarisedState RandomStates::next() {
    for (;;) {
        const std::size_t rank = static_cast<std::size_t>(pick(1, 4));
        const std::size_t count = static_cast<std::size_t>(pick(1, 6));
        std::vector<QVec> characters;
        for (std::size_t k = 0; k < count; ++k) {
            QVec chi(rank);
            bool zero = true;
            for (std::size_t i = 0; i < rank; ++i) {
                chi[i] = Rational(pick(-3, 3));
                if (chi[i] != 0) zero = false;
            }
            if (!zero) characters.push_back(std::move(chi));
        }
        if (characters.empty()) continue;

        // Semistable by construction: the polarisation is a nonnegative
        // combination of the characters.
        QVec alpha = zero_vector(rank);
        if (pick(0, 2) != 0) {
            for (const QVec& chi : characters) {
                long num = pick(0, 2);
                if (num == 0) continue;
                alpha = add(alpha, scale(Rational(Int(num), Int(pick(1, 3))), chi));
            }
        }
        return PolarisedState(rank, std::move(characters), std::move(alpha),
                              InnerProduct(gram(rank)));
    }
}

}  // namespace balfilt
