# kstate: fiberedness of Kauffman state surfaces
