#pragma once

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace ricci {

// Minimal JSON emitter with a pinned number format (17 significant digits)
// and stable key order, so identical runs serialize byte-identically.
class JsonWriter {
public:
  std::string str() const { return os_.str(); }

  JsonWriter& begin_object() {
    comma();
    os_ << '{';
    stack_.push_back(false);
    return *this;
  }
  JsonWriter& end_object() {
    os_ << '}';
    stack_.pop_back();
    mark();
    return *this;
  }
  JsonWriter& begin_array() {
    comma();
    os_ << '[';
    stack_.push_back(false);
    return *this;
  }
  JsonWriter& end_array() {
    os_ << ']';
    stack_.pop_back();
    mark();
    return *this;
  }
  JsonWriter& key(const std::string& k) {
    comma();
    write_string(k);
    os_ << ':';
    pending_value_ = true;
    return *this;
  }
  JsonWriter& value(double v) {
    comma();
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os_ << buf;
    mark();
    return *this;
  }
  JsonWriter& value(long v) {
    comma();
    os_ << v;
    mark();
    return *this;
  }
  JsonWriter& value(int v) { return value(static_cast<long>(v)); }
  JsonWriter& value(unsigned long long v) {
    comma();
    os_ << v;
    mark();
    return *this;
  }
  JsonWriter& value(bool v) {
    comma();
    os_ << (v ? "true" : "false");
    mark();
    return *this;
  }
  JsonWriter& value(const std::string& v) {
    comma();
    write_string(v);
    mark();
    return *this;
  }
  JsonWriter& value(const char* v) { return value(std::string(v)); }
  JsonWriter& null_value() {
    comma();
    os_ << "null";
    mark();
    return *this;
  }

private:
  void comma() {
    if (pending_value_) {
      pending_value_ = false;
      return;
    }
    if (!stack_.empty() && stack_.back()) os_ << ',';
  }
  void mark() {
    if (!stack_.empty()) stack_.back() = true;
  }
  void write_string(const std::string& s) {
    os_ << '"';
    for (char c : s) {
      switch (c) {
        case '"': os_ << "\\\""; break;
        case '\\': os_ << "\\\\"; break;
        case '\n': os_ << "\\n"; break;
        case '\t': os_ << "\\t"; break;
        case '\r': os_ << "\\r"; break;
        default:
          if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\u%04x", c);
            os_ << buf;
          } else {
            os_ << c;
          }
      }
    }
    os_ << '"';
  }

  std::ostringstream os_;
  std::vector<bool> stack_;
  bool pending_value_ = false;
};

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

} // namespace ricci
