#include "reduce.hpp"

#include <algorithm>
#include <sstream>

#include "error.hpp"

namespace apfree {

namespace {

// Working copy: live rows over live columns, columns tagged with their
// original index.
struct WorkMatrix {
    std::vector<std::vector<Rat>> rows;
    std::vector<std::size_t> col_ids;

    static WorkMatrix from(const RatMatrix& m) {
        WorkMatrix w;
        w.col_ids.resize(m.cols());
        for (std::size_t c = 0; c < m.cols(); ++c)
            w.col_ids[c] = c;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            std::vector<Rat> row(m.cols());
            bool nonzero = false;
            for (std::size_t c = 0; c < m.cols(); ++c) {
                row[c] = m.at(r, c);
                nonzero = nonzero || row[c] != 0;
            }
            if (nonzero)
                w.rows.push_back(std::move(row));
        }
        return w;
    }

    // 0 if mixed-sign or zero, else +1 / -1.
    static int row_sign(const std::vector<Rat>& row) {
        bool pos = false, neg = false;
        for (const Rat& v : row) {
            const int s = sgn(v);
            pos = pos || s > 0;
            neg = neg || s < 0;
            if (pos && neg)
                return 0;
        }
        if (pos)
            return 1;
        if (neg)
            return -1;
        return 0;
    }

    void delete_columns(const std::vector<std::size_t>& local_cols) {
        for (auto& row : rows) {
            std::size_t out = 0;
            std::size_t di = 0;
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (di < local_cols.size() && local_cols[di] == c) {
                    ++di;
                    continue;
                }
                row[out++] = std::move(row[c]);
            }
            row.resize(out);
        }
        std::size_t out = 0;
        std::size_t di = 0;
        for (std::size_t c = 0; c < col_ids.size(); ++c) {
            if (di < local_cols.size() && local_cols[di] == c) {
                ++di;
                continue;
            }
            col_ids[out++] = col_ids[c];
        }
        col_ids.resize(out);
        std::erase_if(rows, [](const std::vector<Rat>& row) {
            return std::all_of(row.begin(), row.end(), [](const Rat& v) { return v == 0; });
        });
    }
};

RatMatrix initial_matrix(const ConstraintSystem& system, InitialMatrix initial,
                         const RatMatrix* custom_t) {
    switch (initial) {
        case InitialMatrix::a:
            return system.matrix;
        case InitialMatrix::rref_form:
            return rref(system.matrix).first;
        case InitialMatrix::custom:
            if (custom_t == nullptr)
                throw Error(ErrorCode::invalid_argument, "custom initial matrix missing");
            if (custom_t->cols() != system.matrix.rows())
                throw Error(ErrorCode::invalid_argument,
                            "custom T has " + std::to_string(custom_t->cols()) +
                                " columns, system has " +
                                std::to_string(system.matrix.rows()) + " rows");
            if (!is_invertible(*custom_t))
                throw Error(ErrorCode::invalid_argument,
                            "custom T must be invertible (T*A = B must preserve the "
                            "solution set)");
            return mat_mul(*custom_t, system.matrix);
    }
    throw Error(ErrorCode::internal, "unreachable");
}

}  // namespace

ReductionTrace reduce(const ConstraintSystem& system, InitialMatrix initial,
                      const RatMatrix* custom_t, RowPick pick) {
    ReductionTrace trace;
    trace.initial = initial;

    WorkMatrix w = WorkMatrix::from(initial_matrix(system, initial, custom_t));
    for (;;) {
        if (w.col_ids.empty())
            break;
        std::size_t chosen = w.rows.size();
        int sign = 0;
        if (pick == RowPick::top_first) {
            for (std::size_t r = 0; r < w.rows.size(); ++r) {
                sign = WorkMatrix::row_sign(w.rows[r]);
                if (sign != 0) {
                    chosen = r;
                    break;
                }
            }
        } else {
            for (std::size_t r = w.rows.size(); r-- > 0;) {
                sign = WorkMatrix::row_sign(w.rows[r]);
                if (sign != 0) {
                    chosen = r;
                    break;
                }
            }
        }
        if (chosen == w.rows.size())
            break;  // no sign-consistent nonzero row left

        std::vector<std::size_t> local;
        for (std::size_t c = 0; c < w.rows[chosen].size(); ++c)
            if (w.rows[chosen][c] != 0)
                local.push_back(c);
        ReduceStep step;
        step.row = chosen;
        step.sign = sign;
        for (std::size_t c : local)
            step.deleted_columns.push_back(w.col_ids[c]);
        trace.steps.push_back(std::move(step));
        w.delete_columns(local);
    }

    trace.surviving_columns = w.col_ids;
    trace.outcome = w.col_ids.empty() ? ReduceOutcome::reduced : ReduceOutcome::stuck;
    return trace;
}

bool verify_trace(const ConstraintSystem& system, const ReductionTrace& trace,
                  const RatMatrix* custom_t) {
    WorkMatrix w;
    try {
        w = WorkMatrix::from(initial_matrix(system, trace.initial, custom_t));
    } catch (const Error&) {
        return false;
    }

    for (const ReduceStep& step : trace.steps) {
        if (step.row >= w.rows.size())
            return false;
        const auto& row = w.rows[step.row];
        const int sign = WorkMatrix::row_sign(row);
        if (sign == 0 || sign != step.sign)
            return false;
        std::vector<std::size_t> local;
        std::vector<std::size_t> original;
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (row[c] != 0) {
                local.push_back(c);
                original.push_back(w.col_ids[c]);
            }
        }
        if (original != step.deleted_columns)
            return false;
        w.delete_columns(local);
    }

    const bool emptied = w.col_ids.empty();
    if (trace.outcome == ReduceOutcome::reduced) {
        if (!emptied || !trace.surviving_columns.empty())
            return false;
    } else {
        if (emptied)
            return false;
        // stuck means the procedure terminated: no usable row may remain
        for (const auto& row : w.rows)
            if (WorkMatrix::row_sign(row) != 0)
                return false;
        if (!trace.surviving_columns.empty() && trace.surviving_columns != w.col_ids)
            return false;
    }
    return true;
}

std::string trace_to_text(const ReductionTrace& trace) {
    std::ostringstream os;
    os << "initial=";
    switch (trace.initial) {
        case InitialMatrix::a: os << "A"; break;
        case InitialMatrix::rref_form: os << "RREF"; break;
        case InitialMatrix::custom: os << "CUSTOM"; break;
    }
    os << '\n';
    for (const ReduceStep& s : trace.steps) {
        os << "row=" << s.row << " sign=" << (s.sign > 0 ? '+' : '-') << " cols=";
        for (std::size_t i = 0; i < s.deleted_columns.size(); ++i) {
            if (i)
                os << ',';
            os << s.deleted_columns[i];
        }
        os << '\n';
    }
    os << "outcome=" << (trace.outcome == ReduceOutcome::reduced ? "REDUCED" : "STUCK")
       << '\n';
    return os.str();
}

ReductionTrace trace_from_text(const std::string& text) {
    ReductionTrace trace;
    std::istringstream is(text);
    std::string line;
    bool have_initial = false, have_outcome = false;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (line.rfind("initial=", 0) == 0) {
            const std::string v = line.substr(8);
            if (v == "A")
                trace.initial = InitialMatrix::a;
            else if (v == "RREF")
                trace.initial = InitialMatrix::rref_form;
            else if (v == "CUSTOM")
                trace.initial = InitialMatrix::custom;
            else
                throw Error(ErrorCode::invalid_argument, "bad trace header: " + line);
            have_initial = true;
        } else if (line.rfind("outcome=", 0) == 0) {
            const std::string v = line.substr(8);
            if (v == "REDUCED")
                trace.outcome = ReduceOutcome::reduced;
            else if (v == "STUCK")
                trace.outcome = ReduceOutcome::stuck;
            else
                throw Error(ErrorCode::invalid_argument, "bad trace footer: " + line);
            have_outcome = true;
        } else if (line.rfind("row=", 0) == 0) {
            ReduceStep step;
            std::istringstream ls(line);
            std::string tok;
            bool have_row = false, have_sign = false, have_cols = false;
            while (ls >> tok) {
                if (tok.rfind("row=", 0) == 0) {
                    step.row = std::stoul(tok.substr(4));
                    have_row = true;
                } else if (tok.rfind("sign=", 0) == 0) {
                    if (tok.substr(5) == "+")
                        step.sign = 1;
                    else if (tok.substr(5) == "-")
                        step.sign = -1;
                    else
                        throw Error(ErrorCode::invalid_argument, "bad trace sign: " + line);
                    have_sign = true;
                } else if (tok.rfind("cols=", 0) == 0) {
                    std::istringstream cs(tok.substr(5));
                    std::string c;
                    while (std::getline(cs, c, ','))
                        step.deleted_columns.push_back(std::stoul(c));
                    have_cols = true;
                } else {
                    throw Error(ErrorCode::invalid_argument, "bad trace token: " + tok);
                }
            }
            if (!have_row || !have_sign || !have_cols)
                throw Error(ErrorCode::invalid_argument, "incomplete trace step: " + line);
            trace.steps.push_back(std::move(step));
        } else {
            throw Error(ErrorCode::invalid_argument, "bad trace line: " + line);
        }
    }
    if (!have_initial || !have_outcome)
        throw Error(ErrorCode::invalid_argument, "trace missing header or footer");
    return trace;
}

}  // namespace apfree
