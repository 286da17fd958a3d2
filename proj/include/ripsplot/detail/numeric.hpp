#pragma once

#include <charconv>
#include <string>
#include <string_view>

namespace ripsplot::detail {

// Shortest decimal form that round-trips back to the same double.
inline std::string format_double(double value) {
	char buf[32];
	auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
	return std::string(buf, ptr);
}

// Strict full-token parse; surrounding spaces allowed, nothing else.
inline bool parse_double(std::string_view token, double& out) {
	std::size_t begin = token.find_first_not_of(" \t\r");
	if (begin == std::string_view::npos) return false;
	std::size_t end = token.find_last_not_of(" \t\r");
	token = token.substr(begin, end - begin + 1);
	const char* first = token.data();
	const char* last = token.data() + token.size();
	auto [ptr, ec] = std::from_chars(first, last, out);
	return ec == std::errc{} && ptr == last;
}

inline bool parse_long(std::string_view token, long& out) {
	std::size_t begin = token.find_first_not_of(" \t\r");
	if (begin == std::string_view::npos) return false;
	std::size_t end = token.find_last_not_of(" \t\r");
	token = token.substr(begin, end - begin + 1);
	const char* first = token.data();
	const char* last = token.data() + token.size();
	auto [ptr, ec] = std::from_chars(first, last, out);
	return ec == std::errc{} && ptr == last;
}

}  // namespace ripsplot::detail
