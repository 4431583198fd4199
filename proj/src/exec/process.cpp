// SPDX-License-Identifier: Apache-2.0
#include "reprokit/exec/process.hpp"

#include "reprokit/errors.hpp"

#include <cerrno>
#include <chrono>
#include <csignal>
#include <cstdlib>
#include <cstring>

#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

namespace reprokit {

namespace {

struct Pipe {
    int read_end = -1;
    int write_end = -1;

    Pipe() {
        int fds[2];
        if (pipe(fds) != 0) throw EnvironmentError("pipe() failed");
        read_end = fds[0];
        write_end = fds[1];
    }
    ~Pipe() {
        close_read();
        close_write();
    }
    void close_read() {
        if (read_end >= 0) ::close(read_end);
        read_end = -1;
    }
    void close_write() {
        if (write_end >= 0) ::close(write_end);
        write_end = -1;
    }
};

std::vector<std::string> build_env(
    const std::vector<std::pair<std::string, std::string>>& extra) {
    std::vector<std::string> env;
    for (const char* keep : {"PATH", "HOME", "LANG", "LC_ALL", "TMPDIR"}) {
        if (const char* v = std::getenv(keep)) env.push_back(std::string(keep) + "=" + v);
    }
    env.push_back("PYTHONHASHSEED=0");
    env.push_back("PYTHONDONTWRITEBYTECODE=1");
    for (const auto& [k, v] : extra) env.push_back(k + "=" + v);
    return env;
}

}  // namespace

RunResult run_process(const std::vector<std::string>& argv, const fs::path& cwd,
                      int timeout_seconds,
                      const std::vector<std::pair<std::string, std::string>>& extra_env) {
    if (argv.empty()) throw EnvironmentError("empty command");

    Pipe out_pipe, err_pipe, status_pipe;
    // the status pipe reports exec failure back to the parent; it closes
    // silently on successful exec
    if (fcntl(status_pipe.write_end, F_SETFD, FD_CLOEXEC) != 0)
        throw EnvironmentError("fcntl(FD_CLOEXEC) failed");

    std::vector<std::string> env_storage = build_env(extra_env);

    pid_t pid = fork();
    if (pid < 0) throw EnvironmentError("fork() failed");

    if (pid == 0) {
        setpgid(0, 0);  // own process group so a timeout can kill descendants
        out_pipe.close_read();
        err_pipe.close_read();
        status_pipe.close_read();
        dup2(out_pipe.write_end, STDOUT_FILENO);
        dup2(err_pipe.write_end, STDERR_FILENO);
        out_pipe.close_write();
        err_pipe.close_write();

        if (chdir(cwd.c_str()) != 0) {
            int err = errno;
            (void)!write(status_pipe.write_end, &err, sizeof err);
            _exit(127);
        }
        std::vector<char*> cargv;
        for (const auto& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));
        cargv.push_back(nullptr);
        std::vector<char*> cenv;
        for (const auto& e : env_storage) cenv.push_back(const_cast<char*>(e.c_str()));
        cenv.push_back(nullptr);
        execvpe(argv[0].c_str(), cargv.data(), cenv.data());
        int err = errno;
        (void)!write(status_pipe.write_end, &err, sizeof err);
        _exit(127);
    }

    out_pipe.close_write();
    err_pipe.close_write();
    status_pipe.close_write();
    fcntl(out_pipe.read_end, F_SETFL, O_NONBLOCK);
    fcntl(err_pipe.read_end, F_SETFL, O_NONBLOCK);

    // exec failure shows up as data on the status pipe
    int exec_errno = 0;
    {
        ssize_t n = read(status_pipe.read_end, &exec_errno, sizeof exec_errno);
        if (n > 0) {
            waitpid(pid, nullptr, 0);
            throw EnvironmentError("cannot execute '" + argv[0] +
                                   "': " + std::strerror(exec_errno));
        }
    }
    status_pipe.close_read();

    RunResult result;
    auto deadline = std::chrono::steady_clock::now() + std::chrono::seconds(timeout_seconds);
    bool out_open = true, err_open = true;
    char buf[4096];
    while (out_open || err_open) {
        auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
                             deadline - std::chrono::steady_clock::now())
                             .count();
        if (remaining <= 0) {
            result.timed_out = true;
            kill(-pid, SIGKILL);
            break;
        }
        struct pollfd fds[2];
        nfds_t nfds = 0;
        if (out_open) fds[nfds++] = {out_pipe.read_end, POLLIN, 0};
        if (err_open) fds[nfds++] = {err_pipe.read_end, POLLIN, 0};
        int ready = poll(fds, nfds, static_cast<int>(std::min<long long>(remaining, 1000)));
        if (ready < 0) {
            if (errno == EINTR) continue;
            kill(-pid, SIGKILL);
            break;
        }
        for (nfds_t i = 0; i < nfds; ++i) {
            if (!(fds[i].revents & (POLLIN | POLLHUP))) continue;
            ssize_t n = read(fds[i].fd, buf, sizeof buf);
            bool is_out = fds[i].fd == out_pipe.read_end;
            if (n > 0) {
                (is_out ? result.out : result.err).append(buf, static_cast<size_t>(n));
            } else if (n == 0 || errno != EAGAIN) {
                (is_out ? out_open : err_open) = false;
            }
        }
    }
    // drain whatever is left after a kill (fds are non-blocking)
    for (int fd : {out_pipe.read_end, err_pipe.read_end}) {
        ssize_t n;
        while ((n = read(fd, buf, sizeof buf)) > 0)
            (fd == out_pipe.read_end ? result.out : result.err).append(buf, size_t(n));
    }

    int status = 0;
    waitpid(pid, &status, 0);
    if (WIFEXITED(status)) {
        result.exit_code = WEXITSTATUS(status);
    } else if (WIFSIGNALED(status)) {
        result.signaled = true;
        result.exit_code = 128 + WTERMSIG(status);
    }
    return result;
}

} // namespace reprokit
