#include "kemja/logic/external.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <fstream>

#include "kemja/logic/dimacs.hpp"

namespace kemja {

void ExternalSolver::add_clause(std::span<const int> lits) {
    if (lits.empty()) {
        has_empty_ = true;
        return;
    }
    while (cnf_.num_vars() < nvars_) cnf_.new_var();
    cnf_.add_clause(lits);
}

std::string run_process(const std::string& path, const std::vector<std::string>& args, Deadline deadline) {
    int fds[2];
    if (pipe(fds) != 0) throw SolverError(std::string("pipe: ") + std::strerror(errno));
    pid_t pid = fork();
    if (pid < 0) {
        close(fds[0]);
        close(fds[1]);
        throw SolverError(std::string("fork: ") + std::strerror(errno));
    }
    if (pid == 0) {
        dup2(fds[1], STDOUT_FILENO);
        int devnull = open("/dev/null", O_WRONLY);
        if (devnull >= 0) dup2(devnull, STDERR_FILENO);
        close(fds[0]);
        close(fds[1]);
        std::vector<char*> argv;
        argv.push_back(const_cast<char*>(path.c_str()));
        for (const auto& a : args) argv.push_back(const_cast<char*>(a.c_str()));
        argv.push_back(nullptr);
        execv(path.c_str(), argv.data());
        _exit(127);
    }
    close(fds[1]);
    std::string out;
    char buf[4096];
    bool timed_out = false;
    for (;;) {
        int wait_ms = -1;
        if (deadline) {
            auto left = std::chrono::duration_cast<std::chrono::milliseconds>(*deadline - Clock::now()).count();
            if (left <= 0) {
                timed_out = true;
                break;
            }
            wait_ms = static_cast<int>(std::min<long long>(left, 1000));
        }
        pollfd pfd{fds[0], POLLIN, 0};
        int rc = poll(&pfd, 1, wait_ms);
        if (rc < 0 && errno == EINTR) continue;
        if (rc == 0) continue;
        ssize_t n = read(fds[0], buf, sizeof buf);
        if (n <= 0) break;
        out.append(buf, static_cast<std::size_t>(n));
    }
    close(fds[0]);
    if (timed_out) kill(pid, SIGKILL);
    int status = 0;
    waitpid(pid, &status, 0);
    if (timed_out) throw Timeout();
    if (WIFEXITED(status) && WEXITSTATUS(status) == 127 && out.empty())
        throw SolverError("could not execute " + path);
    if (WIFSIGNALED(status)) throw SolverError(path + " terminated by signal " + std::to_string(WTERMSIG(status)));
    return out;
}

namespace {

struct TempFile {
    std::string path;
    TempFile() {
        char tmpl[] = "/tmp/kemja-XXXXXX.cnf";
        int fd = mkstemps(tmpl, 4);
        if (fd < 0) throw SolverError("cannot create temporary file");
        close(fd);
        path = tmpl;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

SatResult ExternalSolver::solve(std::span<const int> assumptions) {
    if (has_empty_) return SatResult::Unsat;
    while (cnf_.num_vars() < nvars_) cnf_.new_var();
    TempFile tmp;
    {
        std::ofstream os(tmp.path);
        write_dimacs(os, cnf_, assumptions);
        if (!os) throw SolverError("cannot write " + tmp.path);
    }
    SolverAnswer ans = parse_solver_output(run_process(path_, {tmp.path}, deadline_));
    if (ans.result == SatResult::Sat) {
        model_.assign(static_cast<std::size_t>(nvars_), 0);
        for (int l : ans.model) {
            if (std::abs(l) > nvars_) throw SolverError("model literal out of range");
            model_[static_cast<std::size_t>(std::abs(l) - 1)] = l > 0;
        }
        // sanity: the model must satisfy what we sent
        auto holds = [&](int l) { return (l > 0) == (model_[static_cast<std::size_t>(std::abs(l) - 1)] != 0); };
        for (const auto& c : cnf_.clauses()) {
            bool ok = false;
            for (int l : c) ok = ok || holds(l);
            if (!ok) throw SolverError("external model violates a clause");
        }
        for (int l : assumptions)
            if (!holds(l)) throw SolverError("external model violates an assumption");
    }
    return ans.result;
}

bool ExternalSolver::value(int var) const {
    if (var < 1 || static_cast<std::size_t>(var) > model_.size()) return false;
    return model_[static_cast<std::size_t>(var - 1)] != 0;
}

std::unique_ptr<SatOracle> make_solver(const SolverConfig& cfg) {
    std::unique_ptr<SatOracle> s;
    if (cfg.external_path.empty())
        s = std::make_unique<CdclSolver>();
    else
        s = std::make_unique<ExternalSolver>(cfg.external_path);
    s->set_deadline(cfg.deadline);
    return s;
}

SatOutcome sat(const CnfFormula& cnf, std::span<const int> assumptions, const SolverConfig& cfg) {
    auto s = make_solver(cfg);
    for (int v = 1; v <= cnf.num_vars(); ++v) s->new_var();
    for (const auto& c : cnf.clauses()) s->add_clause(c);
    SatOutcome out;
    out.sat = s->check(assumptions);
    if (out.sat)
        for (int v = 1; v <= cnf.num_vars(); ++v)
            if (!cnf.name(v).empty()) out.model[cnf.name(v)] = s->value(v);
    return out;
}

bool is_satisfiable(const Formula& f, const SolverConfig& cfg) { return sat(to_cnf_tseitin(f), {}, cfg).sat; }

}  // namespace kemja
