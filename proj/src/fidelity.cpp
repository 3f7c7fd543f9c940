#include "echosculpt/fidelity.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>

#include "echosculpt/exact_sum.hpp"
#include "echosculpt/parallel.hpp"

namespace echosculpt {

PhaseError phase_error_from(const std::vector<double>& achieved, const PhaseTarget& tgt) {
    const int q = static_cast<int>(tgt.one_spin.size());
    if (static_cast<int>(achieved.size()) != q * (q + 1) / 2)
        throw std::invalid_argument("phase_error_from: achieved phase vector length mismatch");
    PhaseError err = PhaseError::zeros(q);
    for (int i = 0; i < q; ++i)
        if (auto t = tgt.one_spin_target(i)) err.one_spin[i] = achieved[i] - *t;
    int row = q, pair = 0;
    for (int i = 0; i < q; ++i)
        for (int j = i + 1; j < q; ++j, ++row, ++pair)
            if (auto t = tgt.two_spin_target(i, j)) err.two_spin[pair] = achieved[row] - *t;
    return err;
}

namespace {

double theta_of(const std::vector<double>& sigma, const std::vector<double>& done,
                const std::vector<double>& dphi_flat, int q) {
    double theta = 0.0;
    for (int i = 0; i < q; ++i) theta += 0.5 * done[i] * sigma[i];
    for (int i = 0; i < q; ++i)
        for (int j = i + 1; j < q; ++j)
            theta += 0.25 * dphi_flat[i * q + j] * sigma[i] * sigma[j];
    return theta;
}

}  // namespace

double exact_fidelity(const PhaseError& error) {
    const int q = error.spin_count();
    if (q < 1) throw std::invalid_argument("exact_fidelity: empty error vector");
    if (static_cast<int>(error.two_spin.size()) != q * (q - 1) / 2)
        throw std::invalid_argument("exact_fidelity: two-spin error length mismatch");
    if (q > kExactFidelityMaxSpins)
        throw std::invalid_argument("exact_fidelity: q too large for the exact 2^q sum");

    std::vector<double> dphi_flat(static_cast<std::size_t>(q) * q, 0.0);
    {
        int pair = 0;
        for (int i = 0; i < q; ++i)
            for (int j = i + 1; j < q; ++j, ++pair) {
                dphi_flat[i * q + j] = error.two_spin[pair];
                dphi_flat[j * q + i] = error.two_spin[pair];
            }
    }

    const std::uint64_t total = 1ull << q;
    const std::size_t parts = q >= 16 ? 64 : 1;  // fixed per q: reduction order is stable
    std::vector<double> part_re(parts), part_im(parts);

    parallel_for(parts, [&](std::size_t p) {
        const std::uint64_t t0 = total * p / parts;
        const std::uint64_t t1 = total * (p + 1) / parts;
        std::vector<double> sigma(q);
        const std::uint64_t g0 = t0 ^ (t0 >> 1);
        for (int i = 0; i < q; ++i) sigma[i] = ((g0 >> i) & 1ull) ? -1.0 : 1.0;
        double theta = theta_of(sigma, error.one_spin, dphi_flat, q);

        KahanSum re, im;
        re.add(std::cos(theta));
        im.add(std::sin(theta));
        for (std::uint64_t t = t0 + 1; t < t1; ++t) {
            const int b = std::countr_zero(t);
            double s = 0.0;
            for (int j = 0; j < q; ++j) s += dphi_flat[b * q + j] * sigma[j];
            theta -= sigma[b] * (error.one_spin[b] + 0.5 * s);
            sigma[b] = -sigma[b];
            if (((t - t0) & 0xffffull) == 0)
                theta = theta_of(sigma, error.one_spin, dphi_flat, q);
            re.add(std::cos(theta));
            im.add(std::sin(theta));
        }
        part_re[p] = re.value();
        part_im[p] = im.value();
    });

    KahanSum re, im;
    for (std::size_t p = 0; p < parts; ++p) {
        re.add(part_re[p]);
        im.add(part_im[p]);
    }
    const double scale = std::ldexp(1.0, -q);  // divide the sum by 2^q
    const double re_n = re.value() * scale, im_n = im.value() * scale;
    const double f = re_n * re_n + im_n * im_n;
    return std::min(1.0, std::max(0.0, f));
}

double approx_infidelity(const PhaseError& error) {
    for (double v : error.one_spin)
        if (v != 0.0) {
            std::fprintf(stderr,
                         "warning: approx_infidelity assumes a symmetrized network but a "
                         "one-spin phase error is nonzero\n");
            break;
        }
    double sum = 0.0;
    for (double d : error.two_spin) sum += d * d / 16.0;
    return sum;
}

std::vector<RoundingScanPoint> rounding_scan(const SpinSystem& sys, const PulseSequence& seq,
                                             const PhaseTarget& tgt,
                                             const std::vector<double>& resolutions_s) {
    const int q = sys.spin_count();
    std::vector<RoundingScanPoint> out;
    out.reserve(resolutions_s.size());
    for (double res : resolutions_s) {
        const PulseSequence rounded = round_times(seq, res);
        const PhaseError err = phase_error_from(simulate_phases(sys, rounded), tgt);
        const double infid =
            q <= kExactFidelityMaxSpins ? 1.0 - exact_fidelity(err) : approx_infidelity(err);
        out.push_back({res, infid});
    }
    return out;
}

std::string scan_to_csv(const std::vector<RoundingScanPoint>& points) {
    std::string csv = "resolution_s,infidelity\n";
    for (const auto& p : points) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.11e,%.11e\n", p.resolution_s, p.infidelity);
        csv += buf;
    }
    return csv;
}

std::vector<double> log_spaced(double from, double to, int points) {
    if (points < 1 || from <= 0.0 || to <= 0.0)
        throw std::invalid_argument("log_spaced: need positive bounds and count");
    std::vector<double> out;
    out.reserve(points);
    if (points == 1) {
        out.push_back(from);
        return out;
    }
    const double ratio = std::log(to / from);
    for (int i = 0; i < points; ++i)
        out.push_back(from * std::exp(ratio * i / (points - 1)));
    return out;
}

}  // namespace echosculpt
