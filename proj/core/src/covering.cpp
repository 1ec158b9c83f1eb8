// SPDX-License-Identifier: Apache-2.0
#include "covcat/covering.hpp"

namespace covcat {

StarDecomposition star(const LinearCategory& c, ObjectIndex b) {
    StarDecomposition s;
    s.object = b;
    for (ObjectIndex y = 0; y < c.object_count(); ++y) {
        if (const auto out = c.basis(b, y); !out.empty()) {
            s.source_star.push_back({y, {out.begin(), out.end()}});
            s.source_dimension += out.size();
        }
        if (const auto in = c.basis(y, b); !in.empty()) {
            s.target_star.push_back({y, {in.begin(), in.end()}});
            s.target_dimension += in.size();
        }
    }
    s.total_dimension = s.source_dimension + s.target_dimension;
    return s;
}

std::string_view to_string(StarSide side) {
    return side == StarSide::Outgoing ? "outgoing" : "incoming";
}

std::string_view to_string(CoveringFailure::Reason reason) {
    switch (reason) {
        case CoveringFailure::Reason::NotSurjective: return "not-surjective-on-objects";
        case CoveringFailure::Reason::BlockNotInvertible: return "block-not-invertible";
        case CoveringFailure::Reason::InvalidFunctor: return "invalid-functor";
    }
    return "unknown";
}

const FibreBlock* CoveringCertificate::find(StarSide side, ObjectIndex lift, ObjectIndex other) const {
    const auto it = index_.find({side, lift, other});
    return it == index_.end() ? nullptr : &blocks[it->second];
}

struct CoveringBuilder {
    static void add(CoveringCertificate& cert, FibreBlock block) {
        cert.index_.emplace(std::tuple{block.side, block.lift, block.other}, cert.blocks.size());
        cert.blocks.push_back(std::move(block));
    }
};

namespace {

FibreBlock make_block(const LinearFunctor& f, const std::vector<std::vector<ObjectIndex>>& fibres, StarSide side,
                      ObjectIndex x, ObjectIndex c) {
    const LinearCategory& src = f.source();
    const LinearCategory& dst = f.target();
    const ObjectIndex b = f(x);
    const std::size_t rows = side == StarSide::Outgoing ? dst.dim(b, c) : dst.dim(c, b);
    FibreBlock block{side, x, b, c, {}, {}, Matrix(src.field(), rows, 0), std::nullopt};
    Matrix m(src.field(), rows, 0);
    for (ObjectIndex y : fibres[c]) {
        const ObjectIndex from = side == StarSide::Outgoing ? x : y;
        const ObjectIndex to = side == StarSide::Outgoing ? y : x;
        if (src.dim(from, to) == 0) {
            continue;
        }
        block.partners.push_back(y);
        block.offsets.push_back(m.cols());
        m = hconcat(m, f.matrix(from, to));
    }
    block.matrix = std::move(m);
    return block;
}

}  // namespace

CoveringCheck check_covering(const LinearFunctor& f) {
    CoveringCheck result;
    if (!validate_functor(f).ok()) {
        result.failure = CoveringFailure{CoveringFailure::Reason::InvalidFunctor, 0, std::nullopt, 0,
                                         "the functor does not validate"};
        return result;
    }
    const LinearCategory& src = f.source();
    const LinearCategory& dst = f.target();

    std::vector<std::vector<ObjectIndex>> fibres(dst.object_count());
    for (ObjectIndex x = 0; x < src.object_count(); ++x) {
        fibres[f(x)].push_back(x);
    }
    for (ObjectIndex b = 0; b < dst.object_count(); ++b) {
        if (fibres[b].empty()) {
            result.failure = CoveringFailure{CoveringFailure::Reason::NotSurjective, b, std::nullopt, 0,
                                             "no object lies over " + dst.object_name(b)};
            return result;
        }
    }

    CoveringCertificate cert(f, fibres);
    for (StarSide side : {StarSide::Outgoing, StarSide::Incoming}) {
        for (ObjectIndex x = 0; x < src.object_count(); ++x) {
            for (ObjectIndex c = 0; c < dst.object_count(); ++c) {
                FibreBlock block = make_block(f, fibres, side, x, c);
                if (block.matrix.rows() == 0 && block.matrix.cols() == 0) {
                    continue;
                }
                RankInverse ri = rank_and_inverse(block.matrix);
                if (!ri.inverse) {
                    const std::string message =
                        std::string(to_string(side)) + " block at " + src.object_name(x) + " toward " +
                        dst.object_name(c) + ": " + std::to_string(block.source_dimension()) + " -> " +
                        std::to_string(block.target_dimension()) + ", rank " + std::to_string(ri.rank);
                    result.failure = CoveringFailure{CoveringFailure::Reason::BlockNotInvertible, 0,
                                                     std::move(block), ri.rank, message};
                    return result;
                }
                block.inverse = std::move(ri.inverse);
                CoveringBuilder::add(cert, std::move(block));
            }
        }
    }
    result.certificate = std::move(cert);
    return result;
}

bool verify_certificate(const CoveringCertificate& certificate) {
    const CoveringCheck fresh = check_covering(certificate.functor);
    if (!fresh.certificate) {
        return false;
    }
    if (fresh.certificate->fibres != certificate.fibres ||
        fresh.certificate->blocks.size() != certificate.blocks.size()) {
        return false;
    }
    for (std::size_t i = 0; i < certificate.blocks.size(); ++i) {
        const auto& a = certificate.blocks[i];
        const auto& b = fresh.certificate->blocks[i];
        if (a.side != b.side || a.lift != b.lift || a.other != b.other || !(a.matrix == b.matrix)) {
            return false;
        }
        if (!a.inverse || !(a.matrix * *a.inverse == Matrix::identity(a.matrix.field(), a.matrix.rows()))) {
            return false;
        }
    }
    return true;
}

bool prop_connected_check(const CoveringCertificate& certificate) {
    const bool source_connected = connected_components(certificate.functor.source()).connected();
    if (!source_connected) {
        return true;
    }
    return connected_components(certificate.functor.target()).connected();
}

}  // namespace covcat
