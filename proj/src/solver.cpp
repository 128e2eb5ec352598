#include "socv/solver.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <fmt/format.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace socv {

std::string default_solver_command() {
  if (const char* env = std::getenv("SOC_SOLVER"); env && *env) return env;
  return "z3 -smt2 {file}";
}

namespace {

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "'\\''";
    else out += c;
  }
  return out + "'";
}

struct ProcessResult {
  std::string out, err;
  int exit_code = -1;
  bool timed_out = false;
};

ProcessResult run_process(const std::string& cmd, double timeout_seconds) {
  int out_pipe[2], err_pipe[2];
  if (pipe(out_pipe) != 0 || pipe(err_pipe) != 0) throw std::runtime_error("pipe() failed");
  pid_t pid = fork();
  if (pid < 0) throw std::runtime_error("fork() failed");
  if (pid == 0) {
    setpgid(0, 0);
    dup2(out_pipe[1], STDOUT_FILENO);
    dup2(err_pipe[1], STDERR_FILENO);
    close(out_pipe[0]);
    close(err_pipe[0]);
    close(out_pipe[1]);
    close(err_pipe[1]);
    execl("/bin/sh", "sh", "-c", cmd.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  setpgid(pid, pid);
  close(out_pipe[1]);
  close(err_pipe[1]);
  ProcessResult r;
  auto deadline = std::chrono::steady_clock::now() + std::chrono::duration<double>(timeout_seconds);
  pollfd fds[2] = {{out_pipe[0], POLLIN, 0}, {err_pipe[0], POLLIN, 0}};
  int open_fds = 2;
  char buf[4096];
  while (open_fds > 0) {
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) {
      r.timed_out = true;
      break;
    }
    int n = poll(fds, 2, static_cast<int>(std::min<long long>(left.count(), 1000)));
    if (n < 0) {
      if (errno == EINTR) continue;
      break;
    }
    for (int i = 0; i < 2; ++i) {
      if (fds[i].fd < 0 || !(fds[i].revents & (POLLIN | POLLHUP | POLLERR))) continue;
      ssize_t got = read(fds[i].fd, buf, sizeof buf);
      if (got <= 0) {
        close(fds[i].fd);
        fds[i].fd = -1;
        --open_fds;
      } else {
        (i == 0 ? r.out : r.err).append(buf, static_cast<std::size_t>(got));
      }
    }
  }
  if (r.timed_out) kill(-pid, SIGKILL);
  for (auto& f : fds)
    if (f.fd >= 0) close(f.fd);
  int status = 0;
  waitpid(pid, &status, 0);
  if (WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
  return r;
}

}  // namespace

SolverVerdict interpret_solver_output(const std::string& out, const std::string& err, int exit_code,
                                      const VerificationCondition& vc) {
  SolverVerdict v;
  v.exit_code = exit_code;
  v.stdout_text = out;
  v.stderr_text = err;
  std::istringstream in(out);
  std::string first;
  while (std::getline(in, first)) {
    auto b = first.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    first = first.substr(b, first.find_last_not_of(" \t\r") - b + 1);
    break;
  }
  if (first == "unsat") {
    v.kind = SolverVerdict::Kind::Unsat;
  } else if (first == "sat") {
    v.kind = SolverVerdict::Kind::Sat;
    v.model_text = out.substr(out.find("sat") + 3);
    auto start = v.model_text.find_first_not_of(" \t\r\n");
    v.model_text = start == std::string::npos ? "" : v.model_text.substr(start);
    v.model = parse_model(v.model_text, vc);
  } else if (first == "unknown") {
    v.kind = SolverVerdict::Kind::Unknown;
    v.reason = "solver returned unknown";
  } else {
    v.kind = SolverVerdict::Kind::Error;
    v.reason = first.empty() ? "solver produced no verdict" : "unexpected solver output: " + first;
  }
  return v;
}

SolverVerdict run_solver(const SolverJob& job, const VerificationCondition& vc) {
  std::string path = job.smt_path;
  bool temp = path.empty();
  if (temp) {
    auto dir = std::filesystem::temp_directory_path();
    path = (dir / fmt::format("socv-{}-{}.smt2", getpid(),
                              std::chrono::steady_clock::now().time_since_epoch().count()))
               .string();
  }
  {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << job.smt_text;
  }
  std::string cmd = job.command;
  auto pos = cmd.find("{file}");
  if (pos == std::string::npos) cmd += " " + shell_quote(path);
  else cmd.replace(pos, 6, shell_quote(path));
  ProcessResult pr = run_process(cmd, job.timeout_seconds);
  if (temp) std::filesystem::remove(path);
  if (pr.timed_out) {
    SolverVerdict v;
    v.kind = SolverVerdict::Kind::Unknown;
    v.reason = "timeout";
    v.stdout_text = pr.out;
    v.stderr_text = pr.err;
    return v;
  }
  SolverVerdict v = interpret_solver_output(pr.out, pr.err, pr.exit_code, vc);
  if (v.kind == SolverVerdict::Kind::Error && pr.exit_code != 0)
    v.reason = fmt::format("solver exited with code {}: {}", pr.exit_code, pr.err.empty() ? v.reason : pr.err);
  return v;
}

}  // namespace socv
