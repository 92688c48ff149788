#ifndef MOMENTKIT_VERSION_HPP
#define MOMENTKIT_VERSION_HPP

#define MOMENTKIT_VERSION "0.1.0"

#endif  // MOMENTKIT_VERSION_HPP
