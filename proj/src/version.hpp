#ifndef APFREE_VERSION_HPP
#define APFREE_VERSION_HPP

#define APFREE_VERSION "0.1.0"

#endif
