#include "polcheck/policy/oracle_policy.h"

#include <cerrno>
#include <csignal>
#include <cstring>

#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

namespace polcheck::policy {

namespace {

[[noreturn]] void fail(const std::string& message) { throw PolicyError(PolicyErrc::OracleFailure, message); }

void ignore_sigpipe() {
    static const bool done = [] {
        std::signal(SIGPIPE, SIG_IGN);
        return true;
    }();
    (void)done;
}

}  // namespace

OraclePolicy::OraclePolicy(const std::string& command, std::vector<std::string> variable_names,
                           std::chrono::milliseconds timeout)
    : variable_names_(std::move(variable_names)), timeout_(timeout) {
    ignore_sigpipe();
    int in_pipe[2];
    int out_pipe[2];
    if (pipe(in_pipe) != 0) fail(std::string("pipe: ") + std::strerror(errno));
    if (pipe(out_pipe) != 0) {
        close(in_pipe[0]);
        close(in_pipe[1]);
        fail(std::string("pipe: ") + std::strerror(errno));
    }
    const pid_t pid = fork();
    if (pid < 0) {
        for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) close(fd);
        fail(std::string("fork: ") + std::strerror(errno));
    }
    if (pid == 0) {
        dup2(in_pipe[0], STDIN_FILENO);
        dup2(out_pipe[1], STDOUT_FILENO);
        for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) close(fd);
        execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
        _exit(127);
    }
    close(in_pipe[0]);
    close(out_pipe[1]);
    pid_ = pid;
    to_child_ = in_pipe[1];
    from_child_ = out_pipe[0];
    fcntl(to_child_, F_SETFD, FD_CLOEXEC);
    fcntl(from_child_, F_SETFD, FD_CLOEXEC);
}

OraclePolicy::~OraclePolicy() { shutdown(); }

void OraclePolicy::shutdown() {
    if (to_child_ >= 0) close(to_child_);
    if (from_child_ >= 0) close(from_child_);
    to_child_ = from_child_ = -1;
    if (pid_ > 0) {
        int status = 0;
        // give the child a moment to exit on EOF, then kill it
        for (int i = 0; i < 20; ++i) {
            if (waitpid(pid_, &status, WNOHANG) == pid_) {
                pid_ = -1;
                return;
            }
            usleep(5000);
        }
        kill(pid_, SIGKILL);
        waitpid(pid_, &status, 0);
        pid_ = -1;
    }
}

std::string OraclePolicy::read_line() {
    const auto deadline = std::chrono::steady_clock::now() + timeout_;
    for (;;) {
        if (auto nl = buffer_.find('\n'); nl != std::string::npos) {
            std::string line = buffer_.substr(0, nl);
            buffer_.erase(0, nl + 1);
            return line;
        }
        const auto left =
            std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
        if (left.count() <= 0) fail("oracle timed out after " + std::to_string(timeout_.count()) + " ms");
        pollfd pfd{from_child_, POLLIN, 0};
        const int r = poll(&pfd, 1, static_cast<int>(left.count()));
        if (r < 0) {
            if (errno == EINTR) continue;
            fail(std::string("poll: ") + std::strerror(errno));
        }
        if (r == 0) continue;
        char chunk[4096];
        const ssize_t n = read(from_child_, chunk, sizeof chunk);
        if (n < 0) {
            if (errno == EINTR || errno == EAGAIN) continue;
            fail(std::string("read: ") + std::strerror(errno));
        }
        if (n == 0) fail("oracle closed its output");
        buffer_.append(chunk, static_cast<std::size_t>(n));
    }
}

ActionDistribution OraclePolicy::query(const model::FactoredState& state, std::span<const std::string> enabled) {
    if (auto it = cache_.find(state); it != cache_.end()) return it->second;
    if (broken_) fail("oracle unavailable after an earlier failure");

    try {
        nlohmann::ordered_json req;
        const auto id = next_id_++;
        req["id"] = id;
        nlohmann::ordered_json st = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < variable_names_.size(); ++i) st[variable_names_[i]] = state[i];
        req["state"] = std::move(st);
        req["enabled"] = std::vector<std::string>(enabled.begin(), enabled.end());
        const std::string msg = req.dump() + "\n";

        std::size_t written = 0;
        while (written < msg.size()) {
            const ssize_t n = write(to_child_, msg.data() + written, msg.size() - written);
            if (n < 0) {
                if (errno == EINTR) continue;
                fail(std::string("write to oracle failed: ") + std::strerror(errno));
            }
            written += static_cast<std::size_t>(n);
        }

        const std::string line = read_line();
        nlohmann::json resp;
        try {
            resp = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error&) {
            fail("malformed oracle reply: " + line);
        }
        if (!resp.is_object() || !resp.contains("id") || !resp["id"].is_number_integer() ||
            resp["id"].get<std::uint64_t>() != id) {
            fail("oracle reply id mismatch: " + line);
        }
        if (!resp.contains("dist") || !resp["dist"].is_object()) fail("oracle reply lacks \"dist\": " + line);
        std::vector<ActionDistribution::Entry> entries;
        for (const auto& [a, p] : resp["dist"].items()) {
            if (!p.is_number()) fail("oracle probability of '" + a + "' is not a number");
            entries.emplace_back(a, p.get<double>());
        }
        ActionDistribution dist(std::move(entries));
        if (auto issue = model::validate_distribution(dist)) {
            throw PolicyError(PolicyErrc::DistributionInvalid,
                              "oracle distribution for state " + state.to_string(variable_names_) + ": " +
                                  issue->message());
        }
        cache_.emplace(state, dist);
        return dist;
    } catch (const PolicyError& e) {
        if (e.kind() == PolicyErrc::OracleFailure) broken_ = true;
        throw;
    }
}

}  // namespace polcheck::policy
