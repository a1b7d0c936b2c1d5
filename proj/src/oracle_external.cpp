#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <sstream>

#include "combimots/oracle.hpp"

namespace combimots {

namespace {

int timeout_from_env(int fallback_ms) {
    const char* env = std::getenv("COMBIMOTS_ORACLE_TIMEOUT_MS");
    if (!env || !*env) return fallback_ms;
    return std::atoi(env);
}

}  // namespace

ExternalOracle::ExternalOracle(ObjectiveSpec spec, std::string command,
                               int timeout_ms)
    : Oracle(std::move(spec)),
      command_(std::move(command)),
      timeout_ms_(timeout_from_env(timeout_ms)) {
    spawn();
}

ExternalOracle::~ExternalOracle() { shutdown(); }

void ExternalOracle::spawn() {
    int to_child[2];
    int from_child[2];
    if (pipe(to_child) != 0 || pipe(from_child) != 0) {
        throw OracleProtocolError("cannot create pipes for external oracle");
    }
    const pid_t pid = fork();
    if (pid < 0) {
        throw OracleProtocolError("cannot fork external oracle process");
    }
    if (pid == 0) {
        setpgid(0, 0);  // own process group, so shutdown reaps grandchildren
        dup2(to_child[0], STDIN_FILENO);
        dup2(from_child[1], STDOUT_FILENO);
        close(to_child[0]);
        close(to_child[1]);
        close(from_child[0]);
        close(from_child[1]);
        execl("/bin/sh", "sh", "-c", command_.c_str(), (char*)nullptr);
        _exit(127);
    }
    setpgid(pid, pid);  // both sides set it to close the fork/kill race
    close(to_child[0]);
    close(from_child[1]);
    child_pid_ = pid;
    to_child_ = to_child[1];
    from_child_ = from_child[0];
}

void ExternalOracle::shutdown() {
    if (to_child_ >= 0) close(to_child_);
    if (from_child_ >= 0) close(from_child_);
    to_child_ = from_child_ = -1;
    if (child_pid_ > 0) {
        kill(-child_pid_, SIGTERM);
        int status = 0;
        waitpid(child_pid_, &status, 0);
        kill(-child_pid_, SIGKILL);
        child_pid_ = -1;
    }
}

ObjectiveVector ExternalOracle::evaluate_raw(const OracleRequest& request) {
    if (child_pid_ <= 0) {
        throw OracleProtocolError("external oracle process is not running");
    }
    std::string ids;
    for (const auto& bid : request.block_ids) {
        if (!ids.empty()) ids.push_back(',');
        ids += bid;
    }
    if (ids.empty()) ids = "-";
    const std::string line = "EVAL " + request.entity_id + " " +
                             request.fingerprint.to_hex() + " " + ids + "\n";
    ssize_t written = write(to_child_, line.data(), line.size());
    if (written != static_cast<ssize_t>(line.size())) {
        throw OracleProtocolError("short write to external oracle");
    }

    // Read until a full reply line is buffered.
    while (buffer_.find('\n') == std::string::npos) {
        pollfd pfd{from_child_, POLLIN, 0};
        const int rc = poll(&pfd, 1, timeout_ms_);
        if (rc == 0) {
            throw OracleProtocolError("external oracle timed out for " +
                                      request.entity_id);
        }
        if (rc < 0) {
            throw OracleProtocolError("poll failure on external oracle pipe");
        }
        char chunk[4096];
        const ssize_t n = read(from_child_, chunk, sizeof(chunk));
        if (n <= 0) {
            throw OracleProtocolError("external oracle closed its output");
        }
        buffer_.append(chunk, static_cast<std::size_t>(n));
    }
    const auto pos = buffer_.find('\n');
    const std::string reply = buffer_.substr(0, pos);
    buffer_.erase(0, pos + 1);

    std::stringstream ss(reply);
    std::string first;
    ss >> first;
    if (first == "ERR") {
        std::string id;
        ss >> id;
        std::string message;
        std::getline(ss, message);
        throw OracleProtocolError("external oracle error for " + id + ":" + message);
    }
    if (first != request.entity_id) {
        throw OracleProtocolError("external oracle replied for '" + first +
                                  "', expected '" + request.entity_id + "'");
    }
    ObjectiveVector raw(spec().count());
    for (Index d = 0; d < spec().count(); ++d) {
        if (!(ss >> raw[d])) {
            throw OracleProtocolError("malformed external oracle reply: " + reply);
        }
    }
    return raw;
}

}  // namespace combimots
