#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

namespace hirefire {

/// Formats a double with 9 significant digits (the project-wide output
/// precision, chosen so emitted files diff stably).
inline std::string fmt_g9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

/// Minimal ordered, indenting JSON emitter. Keys appear in insertion order
/// and all numbers go through fmt_g9, which keeps report files byte-stable
/// across reruns.
class JsonWriter {
 public:
  JsonWriter& begin_object() {
    open("{");
    return *this;
  }
  JsonWriter& end_object() {
    close("}");
    return *this;
  }
  JsonWriter& begin_array() {
    open("[");
    return *this;
  }
  JsonWriter& end_array() {
    close("]");
    return *this;
  }

  JsonWriter& key(std::string_view name) {
    separator();
    quote(name);
    out_ += ": ";
    after_key_ = true;
    return *this;
  }

  JsonWriter& value(double v) {
    separator();
    if (std::isfinite(v)) {
      out_ += fmt_g9(v);
    } else {
      out_ += "null";
    }
    return *this;
  }
  JsonWriter& value(bool v) {
    separator();
    out_ += v ? "true" : "false";
    return *this;
  }
  JsonWriter& value(long long v) {
    separator();
    out_ += std::to_string(v);
    return *this;
  }
  JsonWriter& value(unsigned long long v) {
    separator();
    out_ += std::to_string(v);
    return *this;
  }
  JsonWriter& value(std::size_t v) { return value(static_cast<unsigned long long>(v)); }
  JsonWriter& value(int v) { return value(static_cast<long long>(v)); }
  JsonWriter& value(std::string_view v) {
    separator();
    quote(v);
    return *this;
  }
  JsonWriter& value(const char* v) { return value(std::string_view(v)); }
  JsonWriter& null_value() {
    separator();
    out_ += "null";
    return *this;
  }

  template <class T>
  JsonWriter& field(std::string_view name, const T& v) {
    key(name);
    return value(v);
  }
  JsonWriter& null_field(std::string_view name) {
    key(name);
    return null_value();
  }

  const std::string& str() const { return out_; }

 private:
  void open(const char* bracket) {
    separator();
    out_ += bracket;
    need_comma_.push_back(false);
  }
  void close(const char* bracket) {
    const bool had_items = need_comma_.back();
    need_comma_.pop_back();
    if (had_items) {
      out_ += '\n';
      indent();
    }
    out_ += bracket;
    if (!need_comma_.empty()) need_comma_.back() = true;
  }
  void separator() {
    if (after_key_) {
      after_key_ = false;
      return;
    }
    if (need_comma_.empty()) return;
    if (need_comma_.back()) out_ += ',';
    need_comma_.back() = true;
    out_ += '\n';
    indent();
  }
  void indent() { out_.append(2 * need_comma_.size(), ' '); }
  void quote(std::string_view s) {
    out_ += '"';
    for (char ch : s) {
      switch (ch) {
        case '"': out_ += "\\\""; break;
        case '\\': out_ += "\\\\"; break;
        case '\n': out_ += "\\n"; break;
        case '\t': out_ += "\\t"; break;
        default:
          if (static_cast<unsigned char>(ch) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
            out_ += buf;
          } else {
            out_ += ch;
          }
      }
    }
    out_ += '"';
  }

  std::string out_;
  std::vector<bool> need_comma_;
  bool after_key_ = false;
};

}  // namespace hirefire
