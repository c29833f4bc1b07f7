// io.hpp — JSON wire formats
//
// Matrix format, used repo-wide:
//   {"rows": r, "cols": c, "re": [...], "im": [...]}         (row-major)
// Density operators add "dim". Channels are {"dim": d, "kraus": [matrix...]}.
// Choi states wrap a density operator with the subsystem labeling. Values
// round-trip through decimal text to well below 1e-12.

#pragma once

#include "qswap/channels.hpp"
#include "qswap/spectral.hpp"
#include "qswap/states.hpp"
#include "qswap/tomography.hpp"

#include <json.hpp>

#include <fstream>
#include <string>
#include <vector>

namespace qswap {

using Json = nlohmann::ordered_json;

// Structural problem in an input document (wrong keys, shapes, non-finite
// entries). Distinct from physics-invariant violations, which surface as
// DensityError / invalid_argument from the validators.
class FormatError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

namespace detail {
inline void require_key(const Json& j, const char* key, const char* what) {
    if (!j.contains(key)) {
        throw FormatError(std::string(what) + ": missing key \"" + key + "\"");
    }
}
}  // namespace detail

inline Json matrix_to_json(const Matrix& m) {
    Json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    std::vector<double> re, im;
    re.reserve(static_cast<std::size_t>(m.size()));
    im.reserve(static_cast<std::size_t>(m.size()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index k = 0; k < m.cols(); ++k) {
            re.push_back(m(i, k).real());
            im.push_back(m(i, k).imag());
        }
    }
    j["re"] = re;
    j["im"] = im;
    return j;
}

inline Matrix matrix_from_json(const Json& j) {
    detail::require_key(j, "rows", "matrix");
    detail::require_key(j, "cols", "matrix");
    detail::require_key(j, "re", "matrix");
    detail::require_key(j, "im", "matrix");
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    if (rows <= 0 || cols <= 0) throw FormatError("matrix: rows/cols must be positive");
    const auto re = j.at("re").get<std::vector<double>>();
    const auto im = j.at("im").get<std::vector<double>>();
    const auto n = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
    if (re.size() != n || im.size() != n) {
        throw FormatError("matrix: re/im length does not equal rows*cols");
    }
    Matrix m(rows, cols);
    std::size_t idx = 0;
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index k = 0; k < cols; ++k, ++idx) {
            m(i, k) = Cx(re[idx], im[idx]);
        }
    }
    if (!all_finite(m)) throw FormatError("matrix: entries must be finite");
    return m;
}

inline Json density_to_json(const DensityOperator& rho) {
    Json j = matrix_to_json(rho.matrix);
    j["dim"] = rho.dim;
    return j;
}

inline DensityOperator density_from_json(const Json& j, double tol = kStructuralTol) {
    const Matrix m = matrix_from_json(j);
    if (j.contains("dim") && j.at("dim").get<Eigen::Index>() != m.rows()) {
        throw FormatError("density: dim does not match matrix shape");
    }
    return validate_density(m, tol);
}

inline Json vector_to_json(const Vector& v) {
    Json j;
    j["size"] = v.size();
    std::vector<double> re, im;
    re.reserve(static_cast<std::size_t>(v.size()));
    im.reserve(static_cast<std::size_t>(v.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        re.push_back(v(i).real());
        im.push_back(v(i).imag());
    }
    j["re"] = re;
    j["im"] = im;
    return j;
}

inline Vector vector_from_json(const Json& j) {
    detail::require_key(j, "re", "vector");
    detail::require_key(j, "im", "vector");
    const auto re = j.at("re").get<std::vector<double>>();
    const auto im = j.at("im").get<std::vector<double>>();
    if (re.size() != im.size() || re.empty()) throw FormatError("vector: bad re/im lengths");
    Vector v(static_cast<Eigen::Index>(re.size()));
    for (std::size_t i = 0; i < re.size(); ++i) v(static_cast<Eigen::Index>(i)) = Cx(re[i], im[i]);
    if (!v.allFinite()) throw FormatError("vector: entries must be finite");
    return v;
}

inline Json kraus_to_json(const KrausChannel& ch) {
    Json j;
    j["dim"] = ch.dim;
    Json ops = Json::array();
    for (const Matrix& k : ch.kraus_ops) ops.push_back(matrix_to_json(k));
    j["kraus"] = ops;
    return j;
}

inline KrausChannel kraus_from_json(const Json& j) {
    detail::require_key(j, "dim", "channel");
    detail::require_key(j, "kraus", "channel");
    const int dim = j.at("dim").get<int>();
    if (!j.at("kraus").is_array() || j.at("kraus").empty()) {
        throw FormatError("channel: kraus must be a nonempty array");
    }
    std::vector<Matrix> ops;
    for (const Json& op : j.at("kraus")) ops.push_back(matrix_from_json(op));
    return make_kraus_channel(dim, std::move(ops));
}

inline Json choi_to_json(const ChoiState& c) {
    Json j;
    j["dim"] = c.dim;
    j["subsystems"] = Json{{"a", "kept"}, {"b", "channel-output"}};
    j["state"] = density_to_json(c.state);
    return j;
}

inline ChoiState choi_from_json(const Json& j) {
    detail::require_key(j, "dim", "choi");
    detail::require_key(j, "state", "choi");
    const int dim = j.at("dim").get<int>();
    DensityOperator state = density_from_json(j.at("state"));
    if (state.dim != dim * dim) throw FormatError("choi: state dimension is not dim^2");
    return ChoiState{dim, std::move(state)};
}

inline const char* to_string(ProbeKind k) {
    switch (k) {
        case ProbeKind::diagonal: return "diagonal";
        case ProbeKind::real_offdiag: return "real_offdiag";
        case ProbeKind::imag_offdiag: return "imag_offdiag";
    }
    return "unknown";
}

inline Json schedule_to_json(const TomographySchedule& s) {
    Json j;
    j["dim"] = s.dim;
    j["shots_per_probe"] = s.shots_per_probe;
    Json probes = Json::array();
    for (const ProbeSpec& p : s.probes) {
        Json pj;
        pj["kind"] = to_string(p.kind);
        pj["n"] = p.n;
        if (p.kind != ProbeKind::diagonal) pj["k"] = p.k;
        probes.push_back(pj);
    }
    j["probes"] = probes;
    return j;
}

inline Json reconstruction_to_json(const ReconstructionReport& r) {
    Json j;
    j["schedule"] = schedule_to_json(r.schedule);
    j["visibilities"] = r.per_probe_visibilities;
    j["raw"] = matrix_to_json(r.raw_hermitian);
    j["state"] = density_to_json(r.state);
    j["total_shots"] = r.total_shots;
    return j;
}

inline Json extremal_to_json(const ExtremalResult& r) {
    Json j;
    j["which"] = r.which == Extremum::max ? "max" : "min";
    j["eigenvalue"] = r.eigenvalue_estimate;
    j["eigenvector"] = vector_to_json(r.eigenvector_estimate.amplitudes);
    j["iterations"] = r.iterations_used;
    j["restarts"] = r.restarts_used;
    j["converged"] = r.converged;
    j["visibility_trace"] = r.visibility_trace;
    return j;
}

inline Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError("cannot parse " + path + ": " + e.what());
    }
    return j;
}

inline void save_json(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot open file for writing: " + path);
    out << j.dump(2) << '\n';
}

}  // namespace qswap
