#pragma once

#include <csignal>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <mutex>
#include <string>
#include <vector>

#include "foldkit/classifier.hpp"
#include "foldkit/csv.hpp"
#include "foldkit/dataset.hpp"
#include "foldkit/errors.hpp"

namespace foldkit {

// Adapter for an external classifier running as a child process. Protocol,
// line-oriented over the child's standard streams:
//
//   parent -> child   schema <hash>            (handshake, once)
//   child  -> parent  ok <hash>
//   parent -> child   v1,v2,...                (one CSV row per request,
//                                               original schema column order,
//                                               missing cells empty)
//   child  -> parent  0.73                     (one decimal probability)
//
// The hash fingerprints the original schema so a model trained against a
// different column layout refuses to serve.
class ExternalClassifier final : public ClassifierHandle {
public:
    ExternalClassifier(const std::string& command, const FeatureSchema& schema)
        : schema_(schema) {
        // a dying child must surface as an IoError from write(), not SIGPIPE
        signal(SIGPIPE, SIG_IGN);
        int to_child[2], from_child[2];
        if (pipe(to_child) != 0 || pipe(from_child) != 0)
            throw IoError("external classifier: pipe failed");
        pid_ = fork();
        if (pid_ < 0) throw IoError("external classifier: fork failed");
        if (pid_ == 0) {
            dup2(to_child[0], STDIN_FILENO);
            dup2(from_child[1], STDOUT_FILENO);
            close(to_child[0]);
            close(to_child[1]);
            close(from_child[0]);
            close(from_child[1]);
            execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
            _exit(127);
        }
        close(to_child[0]);
        close(from_child[1]);
        write_fd_ = to_child[1];
        read_fd_ = from_child[0];

        const std::string hash = std::to_string(schema_hash());
        send_line("schema " + hash);
        const std::string reply = read_line();
        if (reply != "ok " + hash && reply != "ok")
            throw IoError("external classifier handshake failed: got '" + reply + "'");
    }

    ~ExternalClassifier() override {
        if (write_fd_ >= 0) close(write_fd_);
        if (read_fd_ >= 0) close(read_fd_);
        if (pid_ > 0) {
            int status = 0;
            waitpid(pid_, &status, 0);
        }
    }

    ExternalClassifier(const ExternalClassifier&) = delete;
    ExternalClassifier& operator=(const ExternalClassifier&) = delete;

    double predict(const Sample& sample) const override {
        std::lock_guard<std::mutex> lock(io_mutex_);
        std::string row;
        for (std::size_t i = 0; i < schema_.columns.size(); ++i) {
            if (i > 0) row += ',';
            const Column& column = schema_.columns[i];
            if (sample.has(column.name)) row += csv_quote(sample.get(column.name));
        }
        send_line(row);
        const std::string reply = read_line();
        char* end = nullptr;
        const double probability = std::strtod(reply.c_str(), &end);
        if (end == reply.c_str() || probability < 0.0 || probability > 1.0)
            throw IoError("external classifier returned '" + reply +
                          "', expected a probability in [0,1]");
        return probability;
    }

    std::string provenance() const override { return "external"; }

    std::uint64_t schema_hash() const {
        std::uint64_t hash = 1469598103934665603ULL;
        auto mix = [&hash](const std::string& text) {
            for (unsigned char c : text) {
                hash ^= c;
                hash *= 1099511628211ULL;
            }
            hash ^= 0xff;
            hash *= 1099511628211ULL;
        };
        for (const Column& column : schema_.columns) {
            mix(column.name);
            mix(column.kind == ColumnKind::Numeric ? "num" : "cat");
        }
        return hash;
    }

private:
    void send_line(const std::string& line) const {
        std::string payload = line + "\n";
        std::size_t written = 0;
        while (written < payload.size()) {
            const ssize_t n = write(write_fd_, payload.data() + written, payload.size() - written);
            if (n <= 0) throw IoError("external classifier: write failed (child exited?)");
            written += static_cast<std::size_t>(n);
        }
    }

    std::string read_line() const {
        std::string line;
        for (;;) {
            const std::size_t newline = buffer_.find('\n');
            if (newline != std::string::npos) {
                line = buffer_.substr(0, newline);
                buffer_.erase(0, newline + 1);
                if (!line.empty() && line.back() == '\r') line.pop_back();
                return line;
            }
            char chunk[256];
            const ssize_t n = read(read_fd_, chunk, sizeof(chunk));
            if (n <= 0) throw IoError("external classifier: child closed its output");
            buffer_.append(chunk, static_cast<std::size_t>(n));
        }
    }

    FeatureSchema schema_;
    pid_t pid_ = -1;
    int write_fd_ = -1;
    int read_fd_ = -1;
    mutable std::string buffer_;
    mutable std::mutex io_mutex_;
};

}  // namespace foldkit
