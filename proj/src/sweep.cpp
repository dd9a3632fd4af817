#include "layeremit/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <ostream>
#include <thread>

namespace layeremit {

namespace {

SweepRow compute_point(const RunConfig& cfg, const Structure& base, double axis_value) {
    SweepRow row;
    row.axis = axis_value;

    const SweepCfg& sw = *cfg.sweep;
    Stack stack = base.stack;
    DipoleSpec dipole = make_dipole(cfg, base);

    switch (sw.axis) {
        case SweepAxis::Frequency:
            dipole.omega_a = axis_value;
            break;
        case SweepAxis::Position:
            dipole.z_a = axis_value * base.stack.thickness(base.dipole_layer);
            break;
        case SweepAxis::Linewidth: {
            const PermittivityModel& from = cfg.materials.at(sw.material);
            stack = base.stack.with_material_replaced(from, from.with_gamma(axis_value));
            break;
        }
    }

    const OrientationSel sel = cfg.dipole.orientation;
    if (sel == OrientationSel::All) {
        DipoleSpec dx = dipole;
        dx.orientation = Orientation::X;
        const RateResult rx = decay_rate(stack, dx, cfg.quad, sw.split);
        DipoleSpec dz = dipole;
        dz.orientation = Orientation::Z;
        const RateResult rz = decay_rate(stack, dz, cfg.quad, sw.split);
        row.gamma_x = rx.gamma_total;
        row.gamma_z = rz.gamma_total;
        row.gamma_avg = (2.0 * rx.gamma_total + rz.gamma_total) / 3.0;
        if (rx.gamma_prop && rz.gamma_prop) {
            row.gamma_prop = (2.0 * *rx.gamma_prop + *rz.gamma_prop) / 3.0;
            row.gamma_evan = (2.0 * *rx.gamma_evan + *rz.gamma_evan) / 3.0;
        }
        row.err_est = std::max(rx.err_est, rz.err_est);
        return row;
    }

    const RateResult r = decay_rate(stack, dipole, cfg.quad, sw.split);
    switch (sel) {
        case OrientationSel::X: row.gamma_x = r.gamma_total; break;
        case OrientationSel::Z: row.gamma_z = r.gamma_total; break;
        case OrientationSel::Avg: row.gamma_avg = r.gamma_total; break;
        case OrientationSel::All: break;  // handled above
    }
    row.gamma_prop = r.gamma_prop;
    row.gamma_evan = r.gamma_evan;
    row.err_est = r.err_est;
    return row;
}

}  // namespace

SweepOutcome run_sweep(const RunConfig& cfg, int threads, bool switched) {
    if (!cfg.sweep) throw ConfigError(0, "run_sweep requires a [sweep] section");
    const SweepCfg& sw = *cfg.sweep;
    Structure base = build_structure(cfg);
    if (switched) {
        if (cfg.replacements.empty())
            throw ConfigError(0, "switched run requires a [switch] section");
        base.stack = build_switched_structure(cfg, base.stack);
    }

    std::vector<double> axis(static_cast<std::size_t>(sw.points));
    for (int i = 0; i < sw.points; ++i)
        axis[static_cast<std::size_t>(i)] =
            sw.min + (sw.max - sw.min) * static_cast<double>(i) / (sw.points - 1);

    SweepOutcome outcome;
    outcome.rows.resize(axis.size());

    unsigned n_threads = threads > 0 ? static_cast<unsigned>(threads)
                                     : std::max(1u, std::thread::hardware_concurrency());
    n_threads = std::min<unsigned>(n_threads, axis.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= axis.size()) return;
            try {
                outcome.rows[i] = compute_point(cfg, base, axis[i]);
            } catch (const std::exception& e) {
                SweepRow row;
                row.axis = axis[i];
                std::string msg = e.what();
                std::replace(msg.begin(), msg.end(), ',', ';');
                std::replace(msg.begin(), msg.end(), '\n', ' ');
                row.status = "error: " + msg;
                outcome.rows[i] = std::move(row);
            }
        }
    };

    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    for (const SweepRow& row : outcome.rows)
        if (row.status != "ok") ++outcome.failures;
    return outcome;
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_csv(const SweepOutcome& outcome, std::ostream& out) {
    out << "axis,gamma_x,gamma_z,gamma_avg,gamma_prop,gamma_evan,err_est,status\n";
    auto field = [](const std::optional<double>& v) { return v ? format_number(*v) : ""; };
    for (const SweepRow& r : outcome.rows) {
        out << format_number(r.axis) << ',' << field(r.gamma_x) << ',' << field(r.gamma_z) << ','
            << field(r.gamma_avg) << ',' << field(r.gamma_prop) << ',' << field(r.gamma_evan)
            << ',' << field(r.err_est) << ',' << r.status << '\n';
    }
}

}  // namespace layeremit
